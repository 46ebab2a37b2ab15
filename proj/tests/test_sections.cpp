#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "corpus.hpp"
#include "fhyper/section.hpp"
#include "fhyper/structure.hpp"

using namespace fhyper;
using namespace corpus;

namespace {

Workspace ws_default() { return Workspace{}; }

PermGroup shuffled(const PermGroup& g, uint64_t seed) {
  auto gens = g.generators();
  std::mt19937_64 rng(seed);
  std::shuffle(gens.begin(), gens.end(), rng);
  return PermGroup::build(g.degree(), std::move(gens));
}

}  // namespace

TEST_CASE("section construction validates the kernel") {
  CHECK_NOTHROW(Section::make(s4(), v4_in_s4()));
  // not normal
  CHECK_THROWS_AS(Section::make(s4(), make(4, {"(1 2)"})), ContractViolation);
  // not contained
  CHECK_THROWS_AS(Section::make(a4(), make(4, {"(1 2)"})), ContractViolation);
  CHECK(Section::make(s4(), v4_in_s4()).order() == 6);
}

TEST_CASE("canonical coset representatives are coset invariants") {
  auto K = v4_in_s4();
  auto elems = K.elements(16);
  for (const char* text : {"(1 2)", "(1 2 3)", "(1 2 3 4)", "(2 3)"}) {
    auto x = parse_cycles(text, 4);
    auto rep = canonical_coset_rep(K, x);
    for (const auto& k : elems) {
      CHECK(canonical_coset_rep(K, k * x) == rep);
      CHECK(canonical_coset_rep(K, x * k) == rep);
    }
  }
}

TEST_CASE("coset enumeration counts the section exactly") {
  auto s = Section::make(s4(), v4_in_s4());
  auto reps = enumerate_cosets(s, 1 << 10, "test");
  CHECK(reps.size() == 6);
  CHECK_THROWS_AS(enumerate_cosets(Section::make(s5(), PermGroup::trivial(5)), 10, "test"),
                  SizeBoundExceeded);
}

TEST_CASE("coset orders") {
  auto g = parse_cycles("(1 2 3 4 5 6)", 6);
  auto k = PermGroup::build(6, {g.power(3)});
  CHECK(coset_order(k, g) == 3);
  CHECK(coset_order(PermGroup::trivial(6), g) == 6);
  CHECK(coset_order(k, Permutation(6)) == 1);
}

TEST_CASE("normal closure") {
  auto G = s4();
  auto cl = normal_closure(G, {parse_cycles("(1 2)(3 4)", 4)});
  CHECK(cl.order() == 4);
  CHECK(same_subgroup(cl, v4_in_s4()));
  CHECK(same_subgroup(cl, brute_normal_closure(G, {parse_cycles("(1 2)(3 4)", 4)})));

  CHECK(normal_closure(G, {Permutation(4)}).is_trivial());
  CHECK(normal_closure(G, {}).is_trivial());

  auto A5 = a5();
  CHECK(normal_closure(A5, {parse_cycles("(1 2 3)", 5)}).order() == 60);
}

TEST_CASE("commutator subgroups") {
  auto G = s4();
  auto der = commutator_subgroup(G, G, G);
  CHECK(same_subgroup(der, a4()));
  // brute force: commutators of all element pairs generate the same subgroup
  auto all = closure_set(4, G.generators());
  std::vector<Permutation> comms;
  for (const auto& x : all)
    for (const auto& y : all) comms.push_back(Permutation::commutator(x, y));
  CHECK(same_subgroup(der, PermGroup::build(4, comms)));

  CHECK(commutator_subgroup(c6(), c6(), c6()).is_trivial());
  CHECK(commutator_subgroup(a5(), a5(), a5()).order() == 60);
}

TEST_CASE("soluble residual") {
  Workspace ws = ws_default();
  CHECK(soluble_residual(ws, s4()).is_trivial());

  auto r5 = soluble_residual(ws, s5());
  CHECK(r5.order() == 60);
  CHECK(same_subgroup(r5, a5()));
  // one-step fixpoint confirmed by brute force
  auto all = closure_set(5, s5().generators());
  std::vector<Permutation> comms;
  for (const auto& x : all)
    for (const auto& y : all) comms.push_back(Permutation::commutator(x, y));
  auto derived = PermGroup::build(5, comms);
  CHECK(same_subgroup(derived, r5));

  auto ra = soluble_residual(ws, a5_times_c3());
  CHECK(ra.order() == 60);
  for (const auto& g : make(8, {"(1 2 3 4 5)", "(1 2 3)"}).generators())
    CHECK(ra.contains(g));
}

TEST_CASE("centralizer of a normal section") {
  Workspace ws = ws_default();
  auto G = s4();
  auto triv = PermGroup::trivial(4);
  auto C = centralizer_of_section(ws, G, triv, v4_in_s4());
  CHECK(same_subgroup(C, v4_in_s4()));
  // brute force: exactly the elements commuting with V4
  auto all = closure_set(4, G.generators());
  std::vector<Permutation> sat;
  for (const auto& g : all) {
    bool ok = true;
    for (const auto& b : v4_in_s4().generators())
      if (!Permutation::commutator(g, b).is_identity()) ok = false;
    if (ok) sat.push_back(g);
  }
  CHECK(PermGroup::build(4, sat).order() == C.order());

  // central kernel section: the centralizer is everything
  auto q = q8();
  auto z = PermGroup::build(8, {parse_cycles("(1 2)(3 4)(5 6)(7 8)", 8)});
  REQUIRE(is_subgroup(z, q));
  CHECK(centralizer_of_section(ws, q, PermGroup::trivial(8), z).order() == 8);

  auto C5 = centralizer_of_section(ws, s5(), PermGroup::trivial(5), a5());
  CHECK(C5.is_trivial());

  CHECK(is_normalized_by(C, G));
}

TEST_CASE("center of a section") {
  Workspace ws = ws_default();
  CHECK(center_of_section(ws, Section::make(s3(), PermGroup::trivial(3))).is_trivial());

  auto zd4 = center_of_section(ws, Section::make(d4(), PermGroup::trivial(4)));
  CHECK(zd4.order() == 2);
  CHECK(zd4.contains(parse_cycles("(1 3)(2 4)", 4)));

  auto ab = c6();
  CHECK(center_of_section(ws, Section::make(ab, PermGroup::trivial(6))).order() == 6);
}

TEST_CASE("p-core of a section") {
  Workspace ws = ws_default();
  auto s = Section::make(s4(), PermGroup::trivial(4));
  CHECK(same_subgroup(p_core_of_section(ws, s, 2), v4_in_s4()));
  CHECK(p_core_of_section(ws, s, 3).is_trivial());
  auto d = Section::make(d4(), PermGroup::trivial(4));
  CHECK(p_core_of_section(ws, d, 2).order() == 8);
  // above a kernel
  auto sv = Section::make(s4(), v4_in_s4());
  CHECK(same_subgroup(p_core_of_section(ws, sv, 3), a4()));
  CHECK_THROWS_AS(p_core_of_section(ws, s, 4), ContractViolation);
}

TEST_CASE("pi-residual of a section") {
  Workspace ws = ws_default();
  auto s = Section::make(s4(), PermGroup::trivial(4));
  CHECK(same_subgroup(pi_residual_of_section(ws, s, PrimeSet::of({2})), a4()));
  // G itself a pi-group: residual is the kernel
  CHECK(pi_residual_of_section(ws, s, PrimeSet::of({2, 3})).is_trivial());
  CHECK(pi_residual_of_section(ws, s, PrimeSet::all_primes()).is_trivial());
  // the only normal subgroup of S3 with 3-power index is S3 itself
  auto s3s = Section::make(s3(), PermGroup::trivial(3));
  CHECK(pi_residual_of_section(ws, s3s, PrimeSet::of({3})).order() == 6);
  CHECK(same_subgroup(pi_residual_of_section(ws, s3s, PrimeSet::of({2})),
                      make(3, {"(1 2 3)"})));
}

TEST_CASE("minimal normal subgroups") {
  Workspace ws = ws_default();
  auto mins4 = minimal_normal_subgroups(ws, Section::make(s4(), PermGroup::trivial(4)));
  REQUIRE(mins4.size() == 1);
  CHECK(same_subgroup(mins4[0], v4_in_s4()));

  auto mink = minimal_normal_subgroups(
      ws, Section::make(klein_regular(), PermGroup::trivial(4)));
  CHECK(mink.size() == 3);
  for (const auto& m : mink) CHECK(m.order() == 2);

  auto mina5 = minimal_normal_subgroups(ws, Section::make(a5(), PermGroup::trivial(5)));
  REQUIRE(mina5.size() == 1);
  CHECK(mina5[0].order() == 60);

  // above a kernel: S4 over V4 has the unique minimal normal A4/V4
  auto over = minimal_normal_subgroups(ws, Section::make(s4(), v4_in_s4()));
  REQUIRE(over.size() == 1);
  CHECK(same_subgroup(over[0], a4()));
}

TEST_CASE("chief series of S4 is the classical one") {
  Workspace ws = ws_default();
  auto cs = chief_series(ws, s4(), {PermGroup::trivial(4)});
  REQUIRE(cs.terms.size() == 4);
  CHECK(cs.terms[0].is_trivial());
  CHECK(same_subgroup(cs.terms[1], v4_in_s4()));
  CHECK(same_subgroup(cs.terms[2], a4()));
  CHECK(cs.terms[3].order() == 24);
  // chiefness: the closure over a term of any element of the next term is
  // that whole next term
  for (size_t i = 0; i + 1 < cs.terms.size(); ++i) {
    auto all = closure_set(4, cs.terms[i + 1].generators());
    for (const auto& x : all) {
      if (cs.terms[i].contains(x)) continue;
      auto cl = normal_closure_over(s4(), cs.terms[i], {x});
      CHECK(same_subgroup(cl, cs.terms[i + 1]));
    }
  }
}

TEST_CASE("chief series tie-break picks the smallest factor first") {
  Workspace ws = ws_default();
  auto cs = chief_series(ws, c6(), {PermGroup::trivial(6)});
  REQUIRE(cs.terms.size() == 3);
  CHECK(cs.terms[1].order() == 2);
  CHECK(cs.terms[2].order() == 6);
}

TEST_CASE("chief series through anchors") {
  Workspace ws = ws_default();
  auto cs = chief_series(ws, s4(), {v4_in_s4()});
  REQUIRE(cs.terms.size() == 3);
  CHECK(same_subgroup(cs.terms[0], v4_in_s4()));

  auto simple = chief_series(ws, a5(), {PermGroup::trivial(5), a5()});
  CHECK(simple.terms.size() == 2);

  CHECK_THROWS_AS(chief_series(ws, s4(), {make(4, {"(1 2)"})}), ContractViolation);
}

TEST_CASE("chief factor order multisets are series independent") {
  Workspace ws = ws_default();
  for (auto& G : {s4(), s5(), c6(), a5_times_c3(), sl23()}) {
    std::multiset<uint64_t> reference;
    {
      auto cs = chief_series(ws, G, {PermGroup::trivial(G.degree())});
      for (size_t i = 0; i < cs.factors(); ++i) reference.insert(cs.factor_order(i));
    }
    for (uint64_t seed = 1; seed <= 4; ++seed) {
      Workspace fresh;
      auto H = shuffled(G, seed);
      auto cs = chief_series(fresh, H, {PermGroup::trivial(G.degree())});
      std::multiset<uint64_t> got;
      for (size_t i = 0; i < cs.factors(); ++i) got.insert(cs.factor_order(i));
      CHECK(got == reference);
    }
  }
}

TEST_CASE("chief series respects the chain-length bound") {
  Workspace ws = ws_default();
  for (auto& G : {s4(), s5(), c6(), d4(), q8(), asl24()}) {
    auto cs = chief_series(ws, G, {PermGroup::trivial(G.degree())});
    CHECK(cs.factors() <= 2u * G.degree() - 3u);
  }
}

TEST_CASE("chief factors are characteristically simple") {
  Workspace ws = ws_default();
  for (auto& G : {s4(), s5(), asl24(), a5_times_c3()}) {
    auto cs = chief_series(ws, G, {PermGroup::trivial(G.degree())});
    for (size_t i = 0; i < cs.factors(); ++i) {
      ChiefFactor f{cs.terms[i + 1], cs.terms[i], G, PermGroup::trivial(G.degree())};
      uint64_t unit = chief_factor_unit_order(ws, f);
      uint64_t ord = f.order();
      while (ord % unit == 0) ord /= unit;
      CHECK(ord == 1);
    }
  }
}

TEST_CASE("simplicity of chief factors") {
  Workspace ws = ws_default();
  auto triv4 = PermGroup::trivial(4);
  CHECK_FALSE(is_simple_factor(ws, ChiefFactor{v4_in_s4(), triv4, s4(), triv4}));
  CHECK(is_simple_factor(ws, ChiefFactor{a4(), v4_in_s4(), s4(), triv4}));

  auto w = a5_wreath_c2();
  auto triv10 = PermGroup::trivial(10);
  CHECK_FALSE(is_simple_factor(ws, ChiefFactor{a5_sq(), triv10, w, triv10}));
  CHECK(is_simple_factor(
      ws, ChiefFactor{a5(), PermGroup::trivial(5), s5(), PermGroup::trivial(5)}));
}

TEST_CASE("composition unit of a factor") {
  Workspace ws = ws_default();
  auto triv4 = PermGroup::trivial(4);
  CHECK(chief_factor_unit_order(ws, ChiefFactor{v4_in_s4(), triv4, s4(), triv4}) == 2);
  CHECK(chief_factor_unit_order(ws, ChiefFactor{a4(), v4_in_s4(), s4(), triv4}) == 3);
  auto w = a5_wreath_c2();
  auto triv10 = PermGroup::trivial(10);
  CHECK(chief_factor_unit_order(ws, ChiefFactor{a5_sq(), triv10, w, triv10}) == 60);
}

TEST_CASE("omega-1 of the center of the p-core") {
  Workspace ws = ws_default();
  auto v = v4_in_s4();
  CHECK(omega1_center_pcore(ws, Section::make(v, PermGroup::trivial(4)), 2).order() == 4);

  auto c4 = make(4, {"(1 2 3 4)"});
  auto om = omega1_center_pcore(ws, Section::make(c4, PermGroup::trivial(4)), 2);
  CHECK(om.order() == 2);
  CHECK(om.contains(parse_cycles("(1 3)(2 4)", 4)));

  auto s = Section::make(s4(), PermGroup::trivial(4));
  CHECK(same_subgroup(omega1_center_pcore(ws, s, 2), v4_in_s4()));
}

TEST_CASE("structural results are normal preimages") {
  Workspace ws = ws_default();
  auto G = asl24();
  REQUIRE(G.order() == 960);
  auto triv = PermGroup::trivial(16);
  auto s = Section::make(G, triv);
  auto core = p_core_of_section(ws, s, 2);
  CHECK(same_subgroup(core, asl24_translations()));
  CHECK(is_normalized_by(core, G));
  auto res = pi_residual_of_section(ws, s, PrimeSet::of({2}));
  CHECK(is_normalized_by(res, G));
  for (const auto& t : chief_series(ws, G, {triv}).terms) CHECK(is_normalized_by(t, G));
}
