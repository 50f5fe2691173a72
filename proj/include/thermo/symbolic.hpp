#pragma once

// Subshifts of finite type, admissible words and locally constant potentials.
//
// Symbols are 0-indexed everywhere in the library. Text forms (word strings,
// JSON tables, CLI output) use 1-indexed symbols so the golden mean shift
// reads over {1, 2}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thermo {

using Symbol = std::uint32_t;

/// Finite word over {0, ..., N-1}.
struct Word {
  std::vector<Symbol> symbols;

  Word() = default;
  Word(std::initializer_list<Symbol> s) : symbols(s) {}
  explicit Word(std::vector<Symbol> s) : symbols(std::move(s)) {}

  std::size_t length() const noexcept { return symbols.size(); }
  Symbol operator[](std::size_t i) const { return symbols[i]; }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;
};

/// Parses a 1-indexed word string. For alphabets of at most 9 symbols the
/// symbols are single digits ("121"); larger alphabets separate the symbols
/// with commas ("10,3,1"). Throws Error(InvalidInput) on malformed text.
Word parse_word(std::string_view text, std::size_t alphabet_size);
std::string format_word(const Word& word, std::size_t alphabet_size);

/// One-sided subshift of finite type. Immutable; copies share storage.
class SftSystem {
 public:
  std::size_t alphabet_size() const noexcept { return data_->n; }
  bool allowed(Symbol from, Symbol to) const noexcept {
    return data_->adjacency[from * data_->n + to] != 0;
  }
  /// Row-major 0/1 matrix.
  std::span<const std::uint8_t> adjacency() const noexcept { return data_->adjacency; }

  /// Number of strongly connected components of the transition graph,
  /// including trivial (single symbol, no self loop) ones.
  std::size_t scc_count() const noexcept { return data_->components.size(); }
  bool is_primitive() const noexcept { return data_->primitive; }

  /// Components ordered by their smallest symbol; symbols inside are sorted.
  const std::vector<std::vector<Symbol>>& components() const noexcept { return data_->components; }
  /// Component index of a symbol.
  std::size_t component_of(Symbol s) const noexcept { return data_->component_of[s]; }
  /// A component is recurrent when it carries at least one cycle.
  bool is_recurrent(std::size_t component) const noexcept { return data_->recurrent[component]; }
  /// gcd of cycle lengths inside a recurrent component (0 for trivial ones).
  std::size_t period(std::size_t component) const noexcept { return data_->period[component]; }

  bool same_as(const SftSystem& other) const noexcept;

 private:
  struct Data {
    std::size_t n = 0;
    std::vector<std::uint8_t> adjacency;
    std::vector<std::vector<Symbol>> components;
    std::vector<std::size_t> component_of;
    std::vector<bool> recurrent;
    std::vector<std::size_t> period;
    bool primitive = false;
  };

  explicit SftSystem(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;

  friend SftSystem make_sft(std::size_t, const std::vector<std::vector<int>>&);
};

/// Validates the matrix and computes the SCC decomposition and primitivity.
/// Errors: NonSquare, BadEntry, StrandedSymbol.
SftSystem make_sft(std::size_t alphabet_size, const std::vector<std::vector<int>>& adjacency);

/// The 2-symbol shift forbidding "22" (0-indexed: forbidding 1 -> 1).
SftSystem golden_mean();
/// Full shift on n symbols.
SftSystem full_shift(std::size_t n);

bool is_admissible(const SftSystem& system, const Word& word);
/// Admissible when read cyclically (the pair last -> first must be allowed).
bool is_periodic_admissible(const SftSystem& system, const Word& word);

/// Admissible words of length k in lexicographic order.
std::vector<Word> admissible_words(const SftSystem& system, std::size_t k);

/// Exact number of admissible words of length n, computed by n-1 products
/// with the adjacency matrix. Throws Error(Overflow) when the count no longer
/// fits in 64 bits.
std::uint64_t count_admissible_words(const SftSystem& system, std::size_t n);

/// Natural log of the word count, valid for large n (floating point with
/// per-step renormalization).
double log_count_admissible_words(const SftSystem& system, std::size_t n);

/// Locally constant potential: a real value for every admissible word of
/// length depth(). Immutable value type.
class Potential {
 public:
  const SftSystem& system() const noexcept { return system_; }
  std::size_t depth() const noexcept { return depth_; }

  /// Value on the window w[0..depth-1]; the window must be admissible.
  double operator()(std::span<const Symbol> window) const;
  double operator()(const Word& window) const { return (*this)(std::span<const Symbol>(window.symbols)); }
  double at(Symbol a) const;              // depth 1
  double at(Symbol a, Symbol b) const;    // depth 2

  /// Max / min over admissible windows.
  double max_value() const noexcept { return max_; }
  double min_value() const noexcept { return min_; }

  /// (word, value) pairs in lexicographic word order.
  std::vector<std::pair<Word, double>> entries() const;

 private:
  Potential(SftSystem system, std::size_t depth, std::vector<double> dense);

  std::size_t code(std::span<const Symbol> window) const;

  SftSystem system_;
  std::size_t depth_ = 1;
  std::vector<double> dense_;        // indexed by base-N code of the window
  std::vector<std::uint8_t> valid_;  // 1 where the window is admissible
  double max_ = 0.0;
  double min_ = 0.0;

  friend Potential tabulate_potential(const SftSystem&, std::size_t,
                                      const std::function<double(const Word&)>&);
};

/// Errors: MissingEntry, ExtraEntry (including inadmissible keys), NonFinite,
/// InvalidInput (depth 0 or a key of the wrong length).
Potential make_potential(const SftSystem& system, std::size_t depth, const std::map<Word, double>& table);

/// Evaluates `fn` on every admissible word of length `depth`.
/// Errors: NonFinite, InvalidInput (depth 0).
Potential tabulate_potential(const SftSystem& system, std::size_t depth,
                             const std::function<double(const Word&)>& fn);

Potential zero_potential(const SftSystem& system, std::size_t depth = 1);
Potential constant_potential(const SftSystem& system, double value, std::size_t depth = 1);
/// 1 on symbols in `symbols`, 0 elsewhere (depth 1).
Potential indicator_potential(const SftSystem& system, std::span<const Symbol> symbols);
/// Depth-1 potential from per-symbol values.
Potential symbol_potential(const SftSystem& system, std::span<const double> values);
/// The golden mean family member t * 1_[x0 = 1] (symbol 0 internally).
Potential golden_phi(double t);
/// Depth-2 coboundary u∘σ − u, i.e. value u(x1) − u(x0) on the window x0 x1.
Potential coboundary(const SftSystem& system, std::span<const double> u);

/// Same function viewed as a potential of larger depth.
Potential lift(const Potential& potential, std::size_t depth);
/// a·x + b·y on the common (larger) depth.
Potential combine(double a, const Potential& x, double b, const Potential& y);
Potential add_constant(const Potential& potential, double c);
Potential scale(const Potential& potential, double factor);

enum class WordMode { Linear, Periodic };

/// S_n φ(w) = Σ_{k<n} φ(w_k … w_{k+depth−1}). Linear mode needs
/// length ≥ n + depth − 1; periodic mode wraps indices modulo the length.
/// Errors: TooShort, Inadmissible.
double birkhoff_sum(const Potential& potential, const Word& word, std::size_t n,
                    WordMode mode = WordMode::Linear);

/// L-block presentation: symbols are the admissible L-words of the base
/// system, u -> v allowed when u[1..] == v[..L-2].
struct BlockPresentation {
  SftSystem system;
  std::vector<Word> blocks;  // blocks[s] is the L-word behind new symbol s
  std::size_t block_length = 1;
};

BlockPresentation block_presentation(const SftSystem& system, std::size_t block_length);

/// Transfers a potential of depth ≤ L + 1 onto the L-block system: depth ≤ L
/// becomes depth 1, depth L + 1 becomes depth 2.
Potential lift_to_blocks(const Potential& potential, const BlockPresentation& blocks);

struct Recoded {
  BlockPresentation presentation;
  Potential potential;
};

/// Reduces a depth-k potential (k ≥ 2) to a depth-2 potential on the
/// (k−1)-block system. Depth 1 passes through unchanged.
Recoded higher_block_recode(const Potential& potential);

/// Moves a depth-k potential onto the k-block system, where it becomes a
/// depth-1 observable. Used wherever an operation only accepts depth 1.
Recoded recode_to_depth_one(const Potential& potential);

}  // namespace thermo
