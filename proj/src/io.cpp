#include "thermo/io.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "thermo/error.hpp"
#include "thermo/format.hpp"

namespace thermo {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const json& require(const json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) schema_error(std::string("missing field \"") + key + "\"");
  return object.at(key);
}

std::size_t positive_integer(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    schema_error(std::string(what) + " must be a positive integer");
  }
  return value.get<std::size_t>();
}

}  // namespace

const Potential& SystemDocument::potential(std::string_view name) const {
  for (const auto& [n, p] : potentials) {
    if (n == name) return p;
  }
  throw Error(ErrorCode::InvalidInput, "no potential named \"" + std::string(name) + "\"");
}

SystemDocument parse_system_document(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
  const std::size_t n = positive_integer(require(doc, "alphabet_size"), "alphabet_size");

  const json& adj_json = require(doc, "adjacency");
  if (!adj_json.is_array()) schema_error("adjacency must be an array of rows");
  std::vector<std::vector<int>> adjacency;
  for (const json& row : adj_json) {
    if (!row.is_array()) schema_error("adjacency rows must be arrays");
    std::vector<int> r;
    for (const json& e : row) {
      if (e.is_number_integer()) {
        const auto v = e.get<long long>();
        r.push_back(v == 0 || v == 1 ? static_cast<int>(v) : 2);
      } else if (e.is_number()) {
        const double v = e.get<double>();
        r.push_back(v == 0.0 ? 0 : v == 1.0 ? 1 : 2);
      } else {
        schema_error("adjacency entries must be numbers");
      }
    }
    adjacency.push_back(std::move(r));
  }
  SystemDocument out{make_sft(n, adjacency), {}};

  if (!doc.contains("potentials")) return out;
  const json& pots = doc.at("potentials");
  if (!pots.is_array()) schema_error("potentials must be an array");
  for (const json& p : pots) {
    const json& name = require(p, "name");
    if (!name.is_string()) schema_error("potential name must be a string");
    const std::size_t depth = positive_integer(require(p, "depth"), "depth");
    const json& table = require(p, "table");
    if (!table.is_object()) schema_error("potential table must be an object");
    std::map<Word, double> values;
    for (const auto& [key, value] : table.items()) {
      if (!value.is_number()) schema_error("table value for \"" + key + "\" must be a number");
      values[parse_word(key, n)] = value.get<double>();
    }
    for (const auto& existing : out.potentials) {
      if (existing.first == name.get<std::string>()) schema_error("duplicate potential name " + existing.first);
    }
    out.potentials.emplace_back(name.get<std::string>(), make_potential(out.system, depth, values));
  }
  return out;
}

SystemDocument load_system_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_system_document(buffer.str());
}

std::string system_document_json(const SftSystem& system,
                                 const std::vector<std::pair<std::string, Potential>>& potentials) {
  const std::size_t n = system.alphabet_size();
  std::ostringstream out;
  out << "{\"alphabet_size\": " << n << ", \"adjacency\": [";
  for (Symbol i = 0; i < n; ++i) {
    out << (i ? ", " : "") << '[';
    for (Symbol j = 0; j < n; ++j) out << (j ? ", " : "") << (system.allowed(i, j) ? 1 : 0);
    out << ']';
  }
  out << "], \"potentials\": [";
  for (std::size_t k = 0; k < potentials.size(); ++k) {
    const auto& [name, pot] = potentials[k];
    out << (k ? ", " : "") << "{\"name\": " << json(name).dump() << ", \"depth\": " << pot.depth()
        << ", \"table\": {";
    bool first = true;
    for (const auto& [word, value] : pot.entries()) {
      out << (first ? "" : ", ") << json(format_word(word, n)).dump() << ": " << fmt17(value);
      first = false;
    }
    out << "}}";
  }
  out << "]}\n";
  return out.str();
}

void write_json_array(std::ostream& out, const std::vector<double>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << fmt17(values[i]);
  out << ']';
}

void write_triple_json(std::ostream& out, const SpectralTriple& triple) {
  out << "{\"lambda\": " << fmt17(triple.lambda) << ", \"pressure\": " << fmt17(triple.pressure) << ", \"h\": ";
  write_json_array(out, triple.h);
  out << ", \"nu\": ";
  write_json_array(out, triple.nu);
  out << ", \"gap\": " << fmt17(triple.gap_estimate) << '}';
}

void write_measure_json(std::ostream& out, const MarkovMeasure& measure) {
  out << "{\"p\": [";
  for (std::size_t i = 0; i < measure.size; ++i) {
    out << (i ? ", " : "");
    write_json_array(out, std::vector<double>(measure.p.begin() + static_cast<std::ptrdiff_t>(i * measure.size),
                                              measure.p.begin() + static_cast<std::ptrdiff_t>((i + 1) * measure.size)));
  }
  out << "], \"pi\": ";
  write_json_array(out, measure.pi);
  out << '}';
}

}  // namespace thermo
