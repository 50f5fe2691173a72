#include "thermo/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "thermo/error.hpp"

namespace thermo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::BadEntry: return "BadEntry";
    case ErrorCode::StrandedSymbol: return "StrandedSymbol";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::MissingEntry: return "MissingEntry";
    case ErrorCode::ExtraEntry: return "ExtraEntry";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateEigenvector: return "DegenerateEigenvector";
    case ErrorCode::DepthMismatch: return "DepthMismatch";
    case ErrorCode::UnsupportedTransition: return "UnsupportedTransition";
    case ErrorCode::NoDecay: return "NoDecay";
    case ErrorCode::DegenerateRange: return "DegenerateRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorCode::PeriodicComponent: return "PeriodicComponent";
    case ErrorCode::NoCoexistence: return "NoCoexistence";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Words

Word parse_word(std::string_view text, std::size_t alphabet_size) {
  Word word;
  auto push = [&](std::string_view token) {
    if (token.empty()) throw Error(ErrorCode::InvalidInput, "empty symbol in word '" + std::string(text) + "'");
    std::size_t value = 0;
    for (char c : token) {
      if (c < '0' || c > '9') {
        throw Error(ErrorCode::InvalidInput, "non-digit symbol in word '" + std::string(text) + "'");
      }
      value = value * 10 + static_cast<std::size_t>(c - '0');
      if (value > alphabet_size) break;
    }
    if (value < 1 || value > alphabet_size) {
      throw Error(ErrorCode::InvalidInput,
                  "symbol out of range 1.." + std::to_string(alphabet_size) + " in word '" + std::string(text) + "'");
    }
    word.symbols.push_back(static_cast<Symbol>(value - 1));
  };

  if (alphabet_size <= 9) {
    for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
      push(text.substr(start, end - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return word;
}

std::string format_word(const Word& word, std::size_t alphabet_size) {
  std::string out;
  for (std::size_t i = 0; i < word.length(); ++i) {
    if (alphabet_size > 9 && i > 0) out += ',';
    out += std::to_string(word[i] + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SftSystem

namespace {

// Tarjan's algorithm, iterative to stay safe on large block presentations.
std::vector<std::vector<Symbol>> strongly_connected_components(std::size_t n,
                                                               const std::vector<std::uint8_t>& adj) {
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Symbol> stack;
  std::vector<std::vector<Symbol>> out;
  std::size_t counter = 0;

  struct Frame {
    Symbol v;
    std::size_t next;
  };
  for (Symbol root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < n) {
        const Symbol w = static_cast<Symbol>(f.next++);
        if (!adj[f.v * n + w]) continue;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const Symbol v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Symbol> comp;
        Symbol w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

// gcd of cycle lengths within one strongly connected component (BFS levels).
std::size_t component_period(std::size_t n, const std::vector<std::uint8_t>& adj,
                             const std::vector<Symbol>& comp, const std::vector<std::size_t>& comp_of,
                             std::size_t id) {
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level(n, unset);
  std::queue<Symbol> queue;
  level[comp.front()] = 0;
  queue.push(comp.front());
  std::size_t g = 0;
  while (!queue.empty()) {
    const Symbol u = queue.front();
    queue.pop();
    for (Symbol v = 0; v < n; ++v) {
      if (!adj[u * n + v] || comp_of[v] != id) continue;
      if (level[v] == unset) {
        level[v] = level[u] + 1;
        queue.push(v);
      } else {
        const auto diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
        g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
      }
    }
  }
  return g;
}

}  // namespace

bool SftSystem::same_as(const SftSystem& other) const noexcept {
  return data_ == other.data_ || (data_->n == other.data_->n && data_->adjacency == other.data_->adjacency);
}

SftSystem make_sft(std::size_t alphabet_size, const std::vector<std::vector<int>>& adjacency) {
  if (alphabet_size == 0) throw Error(ErrorCode::InvalidInput, "alphabet size must be positive");
  if (adjacency.size() != alphabet_size) {
    throw Error(ErrorCode::NonSquare, "expected " + std::to_string(alphabet_size) + " rows, got " +
                                          std::to_string(adjacency.size()));
  }
  auto data = std::make_shared<SftSystem::Data>();
  const std::size_t n = alphabet_size;
  data->n = n;
  data->adjacency.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency[i].size() != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i + 1) + " has " +
                                            std::to_string(adjacency[i].size()) + " entries, expected " +
                                            std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const int e = adjacency[i][j];
      if (e != 0 && e != 1) {
        throw Error(ErrorCode::BadEntry, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                             ") = " + std::to_string(e) + " is not 0 or 1");
      }
      data->adjacency[i * n + j] = static_cast<std::uint8_t>(e);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool row = false, col = false;
    for (std::size_t j = 0; j < n; ++j) {
      row = row || data->adjacency[i * n + j];
      col = col || data->adjacency[j * n + i];
    }
    if (!row || !col) {
      throw Error(ErrorCode::StrandedSymbol, "symbol " + std::to_string(i + 1) + " has an empty " +
                                                 (row ? "column" : "row"));
    }
  }

  data->components = strongly_connected_components(n, data->adjacency);
  data->component_of.assign(n, 0);
  for (std::size_t c = 0; c < data->components.size(); ++c) {
    for (Symbol s : data->components[c]) data->component_of[s] = c;
  }
  for (std::size_t c = 0; c < data->components.size(); ++c) {
    const auto& comp = data->components[c];
    const bool recurrent = comp.size() > 1 || data->adjacency[comp.front() * n + comp.front()];
    data->recurrent.push_back(recurrent);
    data->period.push_back(recurrent ? component_period(n, data->adjacency, comp, data->component_of, c) : 0);
  }
  data->primitive = data->components.size() == 1 && data->recurrent[0] && data->period[0] == 1;
  return SftSystem(std::move(data));
}

SftSystem golden_mean() { return make_sft(2, {{1, 1}, {1, 0}}); }

SftSystem full_shift(std::size_t n) {
  return make_sft(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 1)));
}

bool is_admissible(const SftSystem& system, const Word& word) {
  for (Symbol s : word.symbols) {
    if (s >= system.alphabet_size()) return false;
  }
  for (std::size_t i = 0; i + 1 < word.length(); ++i) {
    if (!system.allowed(word[i], word[i + 1])) return false;
  }
  return true;
}

bool is_periodic_admissible(const SftSystem& system, const Word& word) {
  if (word.length() == 0 || !is_admissible(system, word)) return false;
  return system.allowed(word.symbols.back(), word.symbols.front());
}

std::vector<Word> admissible_words(const SftSystem& system, std::size_t k) {
  const std::size_t n = system.alphabet_size();
  std::vector<Word> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<Symbol> current;
  // Depth-first extension in lexicographic order.
  auto extend = [&](auto&& self) -> void {
    if (current.size() == k) {
      out.emplace_back(current);
      return;
    }
    for (Symbol s = 0; s < n; ++s) {
      if (!current.empty() && !system.allowed(current.back(), s)) continue;
      current.push_back(s);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  return out;
}

std::uint64_t count_admissible_words(const SftSystem& system, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "word length must be positive");
  const std::size_t size = system.alphabet_size();
  std::vector<std::uint64_t> ending(size, 1), next(size);
  for (std::size_t step = 1; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (!system.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) continue;
        if (__builtin_add_overflow(next[j], ending[i], &next[j])) {
          throw Error(ErrorCode::Overflow, "word count of length " + std::to_string(n) + " exceeds 64 bits");
        }
      }
    }
    ending.swap(next);
  }
  std::uint64_t total = 0;
  for (auto c : ending) {
    if (__builtin_add_overflow(total, c, &total)) {
      throw Error(ErrorCode::Overflow, "word count of length " + std::to_string(n) + " exceeds 64 bits");
    }
  }
  return total;
}

double log_count_admissible_words(const SftSystem& system, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "word length must be positive");
  const std::size_t size = system.alphabet_size();
  std::vector<double> ending(size, 1.0), next(size);
  double log_scale = 0.0;
  for (std::size_t step = 1; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (system.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) next[j] += ending[i];
      }
    }
    const double norm = *std::max_element(next.begin(), next.end());
    for (auto& v : next) v /= norm;
    log_scale += std::log(norm);
    ending.swap(next);
  }
  return log_scale + std::log(std::accumulate(ending.begin(), ending.end(), 0.0));
}

// ---------------------------------------------------------------------------
// Potential

namespace {

std::size_t dense_size(std::size_t n, std::size_t depth) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    if (size > (std::size_t{1} << 26) / n) {
      throw Error(ErrorCode::InvalidInput, "potential table N^depth is too large");
    }
    size *= n;
  }
  return size;
}

std::size_t word_code(std::span<const Symbol> w, std::size_t n) {
  std::size_t c = 0;
  for (Symbol s : w) c = c * n + s;
  return c;
}

}  // namespace

Potential::Potential(SftSystem system, std::size_t depth, std::vector<double> dense)
    : system_(std::move(system)), depth_(depth), dense_(std::move(dense)) {
  const std::size_t n = system_.alphabet_size();
  valid_.assign(dense_.size(), 0);
  max_ = -std::numeric_limits<double>::infinity();
  min_ = std::numeric_limits<double>::infinity();
  for (const Word& w : admissible_words(system_, depth_)) {
    const std::size_t c = word_code(w.symbols, n);
    valid_[c] = 1;
    max_ = std::max(max_, dense_[c]);
    min_ = std::min(min_, dense_[c]);
  }
}

std::size_t Potential::code(std::span<const Symbol> window) const {
  if (window.size() < depth_) {
    throw Error(ErrorCode::TooShort, "window of length " + std::to_string(window.size()) +
                                         " for a depth-" + std::to_string(depth_) + " potential");
  }
  const std::size_t n = system_.alphabet_size();
  for (std::size_t i = 0; i < depth_; ++i) {
    if (window[i] >= n) throw Error(ErrorCode::InvalidInput, "symbol out of range");
  }
  const std::size_t c = word_code(window.first(depth_), n);
  if (!valid_[c]) throw Error(ErrorCode::Inadmissible, "potential evaluated on an inadmissible window");
  return c;
}

double Potential::operator()(std::span<const Symbol> window) const { return dense_[code(window)]; }

double Potential::at(Symbol a) const {
  const Symbol w[1] = {a};
  return (*this)(std::span<const Symbol>(w, 1));
}

double Potential::at(Symbol a, Symbol b) const {
  const Symbol w[2] = {a, b};
  return (*this)(std::span<const Symbol>(w, 2));
}

std::vector<std::pair<Word, double>> Potential::entries() const {
  std::vector<std::pair<Word, double>> out;
  for (Word& w : admissible_words(system_, depth_)) {
    const double v = dense_[word_code(w.symbols, system_.alphabet_size())];
    out.emplace_back(std::move(w), v);
  }
  return out;
}

Potential tabulate_potential(const SftSystem& system, std::size_t depth,
                             const std::function<double(const Word&)>& fn) {
  if (depth == 0) throw Error(ErrorCode::InvalidInput, "potential depth must be positive");
  const std::size_t n = system.alphabet_size();
  std::vector<double> dense(dense_size(n, depth), 0.0);
  for (const Word& w : admissible_words(system, depth)) {
    const double v = fn(w);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFinite, "potential value on '" + format_word(w, n) + "' is not finite");
    }
    dense[word_code(w.symbols, n)] = v;
  }
  return Potential(system, depth, std::move(dense));
}

Potential make_potential(const SftSystem& system, std::size_t depth, const std::map<Word, double>& table) {
  if (depth == 0) throw Error(ErrorCode::InvalidInput, "potential depth must be positive");
  const std::size_t n = system.alphabet_size();
  for (const auto& [word, value] : table) {
    if (word.length() != depth || !is_admissible(system, word)) {
      throw Error(ErrorCode::ExtraEntry, "key '" + format_word(word, n) + "' is not an admissible " +
                                             std::to_string(depth) + "-word");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::NonFinite, "value for '" + format_word(word, n) + "' is not finite");
    }
  }
  return tabulate_potential(system, depth, [&](const Word& w) {
    auto it = table.find(w);
    if (it == table.end()) {
      throw Error(ErrorCode::MissingEntry, "no value for admissible word '" + format_word(w, n) + "'");
    }
    return it->second;
  });
}

Potential zero_potential(const SftSystem& system, std::size_t depth) {
  return constant_potential(system, 0.0, depth);
}

Potential constant_potential(const SftSystem& system, double value, std::size_t depth) {
  return tabulate_potential(system, depth, [value](const Word&) { return value; });
}

Potential indicator_potential(const SftSystem& system, std::span<const Symbol> symbols) {
  return tabulate_potential(system, 1, [&](const Word& w) {
    return std::find(symbols.begin(), symbols.end(), w[0]) != symbols.end() ? 1.0 : 0.0;
  });
}

Potential symbol_potential(const SftSystem& system, std::span<const double> values) {
  if (values.size() != system.alphabet_size()) {
    throw Error(ErrorCode::InvalidInput, "expected one value per symbol");
  }
  return tabulate_potential(system, 1, [&](const Word& w) { return values[w[0]]; });
}

Potential golden_phi(double t) {
  const double values[2] = {t, 0.0};
  return symbol_potential(golden_mean(), values);
}

Potential coboundary(const SftSystem& system, std::span<const double> u) {
  if (u.size() != system.alphabet_size()) {
    throw Error(ErrorCode::InvalidInput, "expected one transfer-function value per symbol");
  }
  return tabulate_potential(system, 2, [&](const Word& w) { return u[w[1]] - u[w[0]]; });
}

Potential lift(const Potential& potential, std::size_t depth) {
  if (depth < potential.depth()) {
    throw Error(ErrorCode::InvalidInput, "cannot lift a depth-" + std::to_string(potential.depth()) +
                                             " potential to depth " + std::to_string(depth));
  }
  if (depth == potential.depth()) return potential;
  return tabulate_potential(potential.system(), depth, [&](const Word& w) {
    return potential(std::span<const Symbol>(w.symbols).first(potential.depth()));
  });
}

Potential combine(double a, const Potential& x, double b, const Potential& y) {
  if (!x.system().same_as(y.system())) {
    throw Error(ErrorCode::InvalidInput, "potentials live on different systems");
  }
  const std::size_t depth = std::max(x.depth(), y.depth());
  const Potential lx = lift(x, depth);
  const Potential ly = lift(y, depth);
  return tabulate_potential(x.system(), depth, [&](const Word& w) { return a * lx(w) + b * ly(w); });
}

Potential add_constant(const Potential& potential, double c) {
  return tabulate_potential(potential.system(), potential.depth(),
                            [&](const Word& w) { return potential(w) + c; });
}

Potential scale(const Potential& potential, double factor) {
  return tabulate_potential(potential.system(), potential.depth(),
                            [&](const Word& w) { return factor * potential(w); });
}

double birkhoff_sum(const Potential& potential, const Word& word, std::size_t n, WordMode mode) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "Birkhoff sum length must be positive");
  const SftSystem& system = potential.system();
  const std::size_t k = potential.depth();
  if (mode == WordMode::Linear) {
    if (word.length() < n + k - 1) {
      throw Error(ErrorCode::TooShort, "need " + std::to_string(n + k - 1) + " symbols, got " +
                                           std::to_string(word.length()));
    }
    if (!is_admissible(system, word)) throw Error(ErrorCode::Inadmissible, "word is not admissible");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += potential(std::span<const Symbol>(word.symbols).subspan(i, k));
    }
    return sum;
  }

  if (word.length() == 0) throw Error(ErrorCode::TooShort, "periodic word is empty");
  if (!is_periodic_admissible(system, word)) {
    throw Error(ErrorCode::Inadmissible, "word is not admissible with wraparound");
  }
  const std::size_t len = word.length();
  std::vector<Symbol> window(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) window[j] = word[(i + j) % len];
    sum += potential(window);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Block presentations

BlockPresentation block_presentation(const SftSystem& system, std::size_t block_length) {
  if (block_length == 0) throw Error(ErrorCode::InvalidInput, "block length must be positive");
  BlockPresentation out{system, admissible_words(system, block_length), block_length};
  if (block_length == 1) return out;

  const std::size_t m = out.blocks.size();
  std::vector<std::vector<int>> adj(m, std::vector<int>(m, 0));
  for (std::size_t u = 0; u < m; ++u) {
    const auto& bu = out.blocks[u].symbols;
    for (std::size_t v = 0; v < m; ++v) {
      const auto& bv = out.blocks[v].symbols;
      adj[u][v] = std::equal(bu.begin() + 1, bu.end(), bv.begin()) ? 1 : 0;
    }
  }
  out.system = make_sft(m, adj);
  return out;
}

Potential lift_to_blocks(const Potential& potential, const BlockPresentation& blocks) {
  const std::size_t k = potential.depth();
  const std::size_t len = blocks.block_length;
  if (len == 1 && blocks.system.same_as(potential.system())) return potential;
  if (k <= len) {
    return tabulate_potential(blocks.system, 1, [&](const Word& w) {
      return potential(std::span<const Symbol>(blocks.blocks[w[0]].symbols).first(k));
    });
  }
  if (k == len + 1) {
    return tabulate_potential(blocks.system, 2, [&](const Word& w) {
      std::vector<Symbol> joined = blocks.blocks[w[0]].symbols;
      joined.push_back(blocks.blocks[w[1]].symbols.back());
      return potential(joined);
    });
  }
  throw Error(ErrorCode::DepthTooLarge, "depth-" + std::to_string(k) + " potential cannot be carried by " +
                                            std::to_string(len) + "-blocks");
}

Recoded higher_block_recode(const Potential& potential) {
  const std::size_t k = potential.depth();
  BlockPresentation presentation = block_presentation(potential.system(), k == 1 ? 1 : k - 1);
  Potential recoded = lift_to_blocks(potential, presentation);
  return {std::move(presentation), std::move(recoded)};
}

Recoded recode_to_depth_one(const Potential& potential) {
  BlockPresentation presentation = block_presentation(potential.system(), potential.depth());
  Potential recoded = lift_to_blocks(potential, presentation);
  return {std::move(presentation), std::move(recoded)};
}

}  // namespace thermo
