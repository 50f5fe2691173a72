#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thermo/error.hpp"
#include "thermo/random.hpp"
#include "thermo/symbolic.hpp"

using namespace thermo;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("make_sft validates the adjacency matrix") {
  CHECK(code_of([] { make_sft(2, {{1, 1}}); }) == ErrorCode::NonSquare);
  CHECK(code_of([] { make_sft(2, {{1, 1}, {1}}); }) == ErrorCode::NonSquare);
  CHECK(code_of([] { make_sft(2, {{1, 2}, {1, 0}}); }) == ErrorCode::BadEntry);
  CHECK(code_of([] { make_sft(2, {{1, 1}, {0, 0}}); }) == ErrorCode::StrandedSymbol);
  CHECK(code_of([] { make_sft(2, {{1, 0}, {1, 0}}); }) == ErrorCode::StrandedSymbol);
}

TEST_CASE("component structure") {
  const SftSystem g = golden_mean();
  CHECK(g.is_primitive());
  CHECK(g.scc_count() == 1);
  CHECK(g.period(0) == 1);

  const SftSystem cycle = make_sft(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK(cycle.scc_count() == 1);
  CHECK(cycle.period(0) == 3);
  CHECK_FALSE(cycle.is_primitive());

  // 0 -> 1 with self loops on both: two recurrent components.
  const SftSystem two = make_sft(2, {{1, 1}, {0, 1}});
  CHECK(two.scc_count() == 2);
  CHECK_FALSE(two.is_primitive());
  CHECK(two.is_recurrent(0));
  CHECK(two.is_recurrent(1));
  CHECK(two.component_of(1) == 1);

  // Symbol 1 sits on the path from the loop at 0 to the loop at 2.
  const SftSystem transient = make_sft(3, {{1, 1, 0}, {0, 0, 1}, {0, 0, 1}});
  CHECK(transient.scc_count() == 3);
  CHECK_FALSE(transient.is_recurrent(transient.component_of(1)));
  CHECK(transient.period(transient.component_of(1)) == 0);
}

TEST_CASE("word text form") {
  CHECK(parse_word("121", 2) == Word{0, 1, 0});
  CHECK(format_word(Word{0, 1, 0}, 2) == "121");
  CHECK(parse_word("10,3,1", 12) == Word{9, 2, 0});
  CHECK(format_word(Word{9, 2, 0}, 12) == "10,3,1");
  CHECK(code_of([] { parse_word("13", 2); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { parse_word("1a", 2); }) == ErrorCode::InvalidInput);
}

TEST_CASE("admissibility") {
  const SftSystem g = golden_mean();
  CHECK(is_admissible(g, Word{0, 1, 0, 0}));
  CHECK_FALSE(is_admissible(g, Word{0, 1, 1}));
  CHECK(is_periodic_admissible(g, Word{0, 1}));
  CHECK_FALSE(is_periodic_admissible(g, Word{1, 0, 1}));
}

TEST_CASE("admissible words match brute-force enumeration") {
  Rng rng(7);
  std::vector<SftSystem> systems = {golden_mean(), full_shift(3)};
  for (int k = 0; k < 4; ++k) systems.push_back(random_primitive_system(rng, 3 + k % 2, 0.5));
  for (const auto& s : systems) {
    for (std::size_t n = 1; n <= (s.alphabet_size() <= 3 ? 9 : 7); ++n) {
      const auto brute = oracle::brute_force_words(s, n);
      CHECK(admissible_words(s, n) == brute);
      CHECK(count_admissible_words(s, n) == brute.size());
    }
  }
}

TEST_CASE("golden mean counts are Fibonacci numbers") {
  const SftSystem g = golden_mean();
  std::uint64_t a = 2, b = 3;  // F(3), F(4)
  CHECK(count_admissible_words(g, 1) == 2);
  CHECK(count_admissible_words(g, 2) == 3);
  for (std::size_t n = 3; n <= 90; ++n) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
    CHECK(count_admissible_words(g, n) == b);
  }
  CHECK(count_admissible_words(g, 10) == 144);
  CHECK(code_of([&] { count_admissible_words(g, 200); }) == ErrorCode::Overflow);
  CHECK(log_count_admissible_words(g, 10) == doctest::Approx(std::log(144.0)).epsilon(1e-14));
  const double rate = log_count_admissible_words(g, 100000) / 100000.0;
  CHECK(std::abs(rate - std::log(oracle::golden_ratio())) < 1e-5);
}

TEST_CASE("potential tables") {
  const SftSystem g = golden_mean();
  CHECK(code_of([&] { make_potential(g, 1, {{Word{0}, 1.0}}); }) == ErrorCode::MissingEntry);
  CHECK(code_of([&] { make_potential(g, 1, {{Word{0}, 1.0}, {Word{1}, 0.0}, {Word{0, 0}, 1.0}}); }) ==
        ErrorCode::ExtraEntry);
  CHECK(code_of([&] {
          make_potential(g, 2, {{Word{0, 0}, 1}, {Word{0, 1}, 1}, {Word{1, 0}, 1}, {Word{1, 1}, 1}});
        }) == ErrorCode::ExtraEntry);
  CHECK(code_of([&] { make_potential(g, 1, {{Word{0}, NAN}, {Word{1}, 0.0}}); }) == ErrorCode::NonFinite);

  const Potential phi = make_potential(g, 2, {{Word{0, 0}, 0.5}, {Word{0, 1}, -1.0}, {Word{1, 0}, 2.0}});
  CHECK(phi.at(0, 1) == -1.0);
  CHECK(phi.max_value() == 2.0);
  CHECK(phi.min_value() == -1.0);
  CHECK(phi.entries().size() == 3);
  CHECK(code_of([&] { phi(Word{0}); }) == ErrorCode::TooShort);
  CHECK(code_of([&] { phi(Word{1, 1}); }) == ErrorCode::Inadmissible);
}

TEST_CASE("Birkhoff sums") {
  const SftSystem g = golden_mean();
  const Potential phi = golden_phi(1.0);
  const Word w{0, 1, 0, 0, 1};
  CHECK(birkhoff_sum(phi, w, 5) == 3.0);
  CHECK(birkhoff_sum(phi, w, 2) + birkhoff_sum(phi, Word{0, 0, 1}, 3) == 3.0);
  CHECK(code_of([&] { birkhoff_sum(phi, w, 6); }) == ErrorCode::TooShort);

  const Potential pair = make_potential(g, 2, {{Word{0, 0}, 1.0}, {Word{0, 1}, 2.0}, {Word{1, 0}, 4.0}});
  // Windows 01,10,00,01 then wrap 10.
  CHECK(birkhoff_sum(pair, w, 4) == 2.0 + 4.0 + 1.0 + 2.0);
  CHECK(birkhoff_sum(pair, w, 5, WordMode::Periodic) == 2.0 + 4.0 + 1.0 + 2.0 + 4.0);
  CHECK(code_of([&] { birkhoff_sum(pair, Word{1, 1, 0}, 2); }) == ErrorCode::Inadmissible);
}

TEST_CASE("Birkhoff sums are additive along random words") {
  Rng rng(11);
  const SftSystem s = random_primitive_system(rng, 4);
  const Potential phi = random_potential(rng, s, 3);
  const auto words = admissible_words(s, 12);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int k = 0; k < 50; ++k) {
    const Word& w = words[pick(rng)];
    const Word tail(std::vector<Symbol>(w.symbols.begin() + 4, w.symbols.end()));
    CHECK(birkhoff_sum(phi, w, 10) == doctest::Approx(birkhoff_sum(phi, w, 4) + birkhoff_sum(phi, tail, 6)));
  }
}

TEST_CASE("potential algebra") {
  Rng rng(3);
  const SftSystem s = random_primitive_system(rng, 3);
  const Potential a = random_potential(rng, s, 1);
  const Potential b = random_potential(rng, s, 2);
  const Potential c = combine(2.0, a, -1.0, b);
  CHECK(c.depth() == 2);
  for (const auto& [w, v] : c.entries()) {
    CHECK(v == doctest::Approx(2.0 * a(Word{w[0]}) - b(w)));
  }
  const Potential lifted = lift(a, 3);
  for (const auto& [w, v] : lifted.entries()) CHECK(v == a(Word{w[0]}));
  CHECK(add_constant(a, 1.5).max_value() == doctest::Approx(a.max_value() + 1.5));
  CHECK(scale(a, -1.0).max_value() == doctest::Approx(-a.min_value()));

  const std::vector<double> u = {0.5, -1.0, 2.0};
  const Potential cob = coboundary(s, u);
  for (const auto& [w, v] : cob.entries()) CHECK(v == u[w[1]] - u[w[0]]);

  const Symbol ones[] = {0, 2};
  const Potential ind = indicator_potential(s, ones);
  CHECK(ind.at(0) == 1.0);
  CHECK(ind.at(1) == 0.0);
}

TEST_CASE("block presentations") {
  const SftSystem g = golden_mean();
  const BlockPresentation b2 = block_presentation(g, 2);
  CHECK(b2.system.alphabet_size() == 3);
  CHECK(b2.system.is_primitive());
  // The L-block system has the same word-count growth, shifted by L - 1.
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(count_admissible_words(b2.system, n) == count_admissible_words(g, n + 1));
  }
  CHECK(block_presentation(g, 1).system.same_as(g));
}

TEST_CASE("recoding preserves Birkhoff sums") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const SftSystem s = random_primitive_system(rng, 3);
    const std::size_t depth = 2 + static_cast<std::size_t>(trial % 3);
    const Potential phi = random_potential(rng, s, depth);

    const Recoded two = higher_block_recode(phi);
    CHECK(two.potential.depth() == 2);
    CHECK(two.presentation.block_length == depth - 1);
    const Recoded one = recode_to_depth_one(phi);
    CHECK(one.potential.depth() == 1);
    CHECK(one.presentation.block_length == depth);

    for (const Word& w : admissible_words(s, depth + 6)) {
      const double direct = birkhoff_sum(phi, w, 7);
      // Same orbit segment read through L-blocks.
      auto blocks_of = [&](const BlockPresentation& bp) {
        std::vector<Symbol> out;
        for (std::size_t i = 0; i + bp.block_length <= w.length(); ++i) {
          const Word piece(std::vector<Symbol>(w.symbols.begin() + static_cast<long>(i),
                                               w.symbols.begin() + static_cast<long>(i + bp.block_length)));
          for (Symbol k = 0; k < bp.blocks.size(); ++k) {
            if (bp.blocks[k] == piece) out.push_back(k);
          }
        }
        return Word(out);
      };
      CHECK(birkhoff_sum(two.potential, blocks_of(two.presentation), 7) == doctest::Approx(direct));
      CHECK(birkhoff_sum(one.potential, blocks_of(one.presentation), 7) == doctest::Approx(direct));
    }
  }
  CHECK(higher_block_recode(golden_phi(1.0)).potential.depth() == 1);
}
