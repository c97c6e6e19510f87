#include "p1dyn/selftest.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "p1dyn/census.hpp"
#include "p1dyn/constructions.hpp"

namespace p1dyn::selftest {

namespace {

struct Runner {
    std::vector<CheckResult> results;
    std::ostream& log;
    std::string only, exclude;

    explicit Runner(std::ostream& log) : log(log) {}

    void run(const std::string& id, const std::string& desc,
             const std::function<void(std::ostringstream&)>& body) {
        if (!only.empty() && id != only) return;
        if (!exclude.empty() && id == exclude) return;
        CheckResult r;
        r.id = id;
        r.description = desc;
        auto t0 = std::chrono::steady_clock::now();
        std::ostringstream detail;
        try {
            body(detail);
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            detail << (detail.str().empty() ? "" : "; ") << e.what();
        }
        r.detail = detail.str();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    }
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

uint64_t pgl2_order(uint64_t q) { return (q + 1) * q * (q - 1); }

// an element different from 0 and 1, least in the canonical order
Fe sample_non_one(Field F) {
    for (uint64_t key = 2; key < F->q; ++key) {
        Fe e = F->from_key(key);
        if (!e.is_zero() && !(e == F->one())) return e;
    }
    return F->from_key(1);
}

}  // namespace

std::vector<CheckResult> run_all(std::ostream& log, const Options& opt) {
    Runner R(log);
    R.only = opt.only;
    R.exclude = opt.exclude;

    R.run("C01", "Aut(z^q) is all of PGL2(F_q) for q in {2,3,4,5}, by brute force",
          [&](std::ostringstream& detail) {
              for (uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
                  Field Q = create_field_q(q);
                  auto rec = power_map(Q->one(), q);
                  auto brute = aut_group_bruteforce(rec.map, Q, 25);
                  require(brute.order() == pgl2_order(q),
                          "order mismatch at q=" + std::to_string(q) + ": got " +
                              std::to_string(brute.order()));
                  require(brute.group.same_elements(rec.claimed_group),
                          "element set mismatch at q=" + std::to_string(q));
                  detail << "q=" << q << ":" << brute.order() << " ";
              }
          });

    R.run("C02", "Aut(a z^q), a != 1, is the Borel group of order q(q-1) for q in {3,4,5}",
          [&](std::ostringstream& detail) {
              for (uint64_t q : {3ull, 4ull, 5ull}) {
                  Field Q = create_field_q(q);
                  auto rec = power_map(sample_non_one(Q), q);
                  auto outcome = verify_record(rec);
                  require(outcome.ok, "claim verification failed at q=" + std::to_string(q));
                  require(outcome.aut.order() == q * (q - 1),
                          "order mismatch at q=" + std::to_string(q));
                  require(outcome.aut.group.label.str().find("Borel") != std::string::npos,
                          "label is not Borel at q=" + std::to_string(q) + ": " +
                              outcome.aut.group.label.str());
                  detail << "q=" << q << ":" << outcome.aut.group.label.str() << " ";
              }
          });

    R.run("C03",
          "psi = (az+b)/(cz+d): Aut is C_q (a != 0 or p = 2) or D_2q (a = 0, p > 2), "
          "brute-forced over GF(q^2)",
          [&](std::ostringstream& detail) {
              for (uint64_t q : {2ull, 3ull, 5ull}) {
                  Field Q = create_field_q(q);
                  Field Q2 = create_field(Q->p, 2);
                  {
                      auto rec = fractional_psi_map(Q->one(), Q->zero(), Q->one(), Q->one(), q);
                      auto brute = aut_group_bruteforce(rec.map, Q2, 25);
                      require(brute.order() == q, "cyclic order mismatch at q=" + std::to_string(q));
                      require(brute.group.same_elements(rec.claimed_group),
                              "cyclic set mismatch at q=" + std::to_string(q));
                  }
                  {
                      auto rec = fractional_psi_map(Q->zero(), Q->one(), Q->one(), Q->zero(), q);
                      auto brute = aut_group_bruteforce(rec.map, Q2, 25);
                      uint64_t expect = Q->p == 2 ? q : 2 * q;
                      require(brute.order() == expect,
                              "dihedral-branch order mismatch at q=" + std::to_string(q));
                      require(brute.group.same_elements(rec.claimed_group),
                              "dihedral-branch set mismatch at q=" + std::to_string(q));
                  }
                  detail << "q=" << q << " ok ";
              }
          });

    R.run("C04", "prod (z - l)^(n+1) + z realizes the semi-elementary group exactly",
          [&](std::ostringstream& detail) {
              struct Case {
                  uint64_t p, k, n;
                  std::vector<uint64_t> basis_keys;
              };
              std::vector<Case> cases{{2, 1, 1, {1}},      // Lambda = F_2, n = 1
                                      {3, 1, 1, {1}},      // Lambda = F_3, n = 1
                                      {2, 2, 3, {1, 2}},   // Lambda = F_4, n = 3
                                      {3, 2, 2, {1}}};     // Lambda = F_3 inside F_9, n = 2
              for (const auto& c : cases) {
                  Field F = create_field(c.p, c.k);
                  std::vector<Fe> basis;
                  for (uint64_t k : c.basis_keys) basis.push_back(F->from_key(k));
                  auto rec = semi_elementary_map(F, basis, c.n);
                  auto outcome = verify_record(rec);
                  require(outcome.ok, "Aut differs from the constructed group at p^k=" +
                                          std::to_string(F->q) + ", n=" + std::to_string(c.n));
                  detail << "|G|=" << rec.claimed_group.order() << " ";
              }
          });

    R.run("C05a", "the invariant-pair PSL2(F_3) map: degree 7, Aut of order 12, non-square witness",
          [&](std::ostringstream& detail) {
              auto rec = psl2_map(3);
              require(rec.map.degree() == 7, "degree is not 7");
              require(psl2_min_degree(3) == 7, "minimal-degree formula disagrees");
              auto outcome = verify_record(rec);
              require(outcome.ok, "Aut differs from PSL2(F_3)");
              require(outcome.aut.order() == 12, "order is not 12");
              require(rec.non_member_witness.has_value(), "witness missing");
              require(conjugate(rec.map, *rec.non_member_witness) != rec.map,
                      "non-square witness unexpectedly fixes the map");
              detail << "deg=7 |Aut|=12";
          });

    R.run("C05b", "the prime-field PSL2 family at p = 3: order 12 at c = 1, 2 and distinct spectra",
          [&](std::ostringstream& detail) {
              Field F3 = create_field(3, 1);
              auto rec1 = psl2_prime_map(3, F3->one());
              auto rec2 = psl2_prime_map(3, F3->from_int(2));
              auto o1 = verify_record(rec1);
              auto o2 = verify_record(rec2);
              require(o1.ok && o1.aut.order() == 12, "c=1: Aut is not PSL2(F_3)");
              require(o2.ok && o2.aut.order() == 12, "c=2: Aut is not PSL2(F_3)");
              detail << "orders 12,12";
              bool distinct = rec1.multiplier_spectrum_fixed != rec2.multiplier_spectrum_fixed ||
                              rec1.multiplier_spectrum_period2 != rec2.multiplier_spectrum_period2;
              require(distinct,
                      "multiplier spectra of c=1 and c=2 coincide (the two maps are conjugate "
                      "via z -> -z scaling of c)");
          });

    R.run("C06", "invariant-pair scan at q = 3: no map of degree 2..6 attains PSL2(F_3); degree 7 does",
          [&](std::ostringstream& detail) {
              Field F3 = create_field(3, 1);
              GroupDesc psl = standard_subgroup(F3, StandardKind::PSL2, 3);
              MatrixGroup lift = sl2_lift(psl);
              bool degree7_hit = false;
              int scanned = 0;
              for (int d = 2; d <= 7; ++d) {
                  auto fs = invariants_of_degree(lift, d - 1);
                  auto gs = invariants_of_degree(lift, d + 1);
                  // all (F, G) pairs up to a joint scalar: G projective, F free
                  std::vector<HomPoly> f_choices;
                  f_choices.push_back(HomPoly::zero(lift.F, d - 1));
                  uint64_t fspan = 1;
                  for (size_t i = 0; i < fs.size(); ++i) fspan *= lift.F->q;
                  for (uint64_t m = 1; m < fspan; ++m) {
                      HomPoly acc = HomPoly::zero(lift.F, d - 1);
                      uint64_t t = m;
                      for (const auto& b : fs) {
                          Fe c = lift.F->from_key(t % lift.F->q);
                          t /= lift.F->q;
                          acc = hp_add(acc, hp_scale(b, c));
                      }
                      f_choices.push_back(acc);
                  }
                  uint64_t gspan = 1;
                  for (size_t i = 0; i < gs.size(); ++i) gspan *= lift.F->q;
                  for (uint64_t m = 1; m < gspan; ++m) {
                      HomPoly G = HomPoly::zero(lift.F, d + 1);
                      uint64_t t = m;
                      for (const auto& b : gs) {
                          Fe c = lift.F->from_key(t % lift.F->q);
                          t /= lift.F->q;
                          G = hp_add(G, hp_scale(b, c));
                      }
                      if (G.is_zero()) continue;
                      for (const auto& Fpoly : f_choices) {
                          ++scanned;
                          RatMap f;
                          try {
                              f = dm_map(Fpoly, G);
                          } catch (const std::exception&) {
                              continue;  // zero coordinate or degree collapse
                          }
                          if (f.degree() < 2) continue;
                          auto aut = aut_group_auto(f);
                          require(aut.certified_complete, "scan hit an uncertified Aut result");
                          if (f.degree() <= 6) {
                              require(aut.order() != 12,
                                      "degree <= 6 map with exact PSL2(F_3) found");
                          } else if (f.degree() == 7 && aut.order() == 12) {
                              degree7_hit = true;
                          }
                      }
                  }
              }
              require(degree7_hit, "no degree-7 map with exact PSL2(F_3) found");
              detail << "pairs scanned: " << scanned;
          });

    R.run("C07", "cyclic and dihedral realizations have exact orders n and 2n",
          [&](std::ostringstream& detail) {
              int count = 0;
              for (uint64_t p : {7ull, 11ull})
                  for (uint64_t n : {2ull, 3ull, 4ull, 5ull, 6ull}) {
                      if (n % p == 0) continue;
                      Field F = create_field(p, 1);
                      auto rec = cyclic_map(n, F);
                      auto outcome = verify_record(rec);
                      require(outcome.ok && outcome.aut.order() == n,
                              "cyclic failure at n=" + std::to_string(n) +
                                  ", p=" + std::to_string(p));
                      ++count;
                  }
              for (uint64_t p : {3ull, 5ull, 7ull})
                  for (uint64_t n : {2ull, 3ull, 4ull, 5ull, 6ull}) {
                      if (n % p == 0) continue;
                      Field F = create_field(p, 1);
                      auto rec = dihedral_map(n, F);
                      auto outcome = verify_record(rec);
                      require(outcome.ok && outcome.aut.order() == 2 * n,
                              "dihedral failure at n=" + std::to_string(n) +
                                  ", p=" + std::to_string(p) + " branch " +
                                  rec.parameters.at("branch"));
                      ++count;
                  }
              detail << count << " cases";
          });

    R.run("C08", "platonic reductions: A4/S4/A5 orders 12/24/60 and exact integer resultants",
          [&](std::ostringstream& detail) {
              require(integer_resultant({0, 5, 0, 0, 0, -1}, {-1, 0, 0, 0, 5}) == -331776ll,
                      "degree-5 resultant is not -2^12 * 3^4");
              require(integer_resultant({-1, 0, 0, 0, -7}, {0, 0, 0, 7, 0, 0, 0, 1}) ==
                          -5308416ll,
                      "degree-7 resultant is not -2^16 * 3^4");
              for (uint64_t p : {5ull, 7ull}) {
                  auto outcome = verify_record(platonic_map(Platonic::A4, p));
                  require(outcome.ok && outcome.aut.order() == 12,
                          "A4 failure at p=" + std::to_string(p));
              }
              for (uint64_t p : {5ull, 7ull, 11ull}) {
                  auto outcome = verify_record(platonic_map(Platonic::S4, p));
                  require(outcome.ok && outcome.aut.order() == 24,
                          "S4 failure at p=" + std::to_string(p));
              }
              for (uint64_t p : {7ull, 11ull, 13ull}) {
                  auto outcome = verify_record(platonic_map(Platonic::A5, p));
                  require(outcome.ok && outcome.aut.order() == 60,
                          "A5 failure at p=" + std::to_string(p));
              }
              detail << "resultants -331776, -5308416";
          });

    R.run("C09", "census agreement with the locus verdicts for q = 2, 3, 5",
          [&](std::ostringstream& detail) {
              for (uint64_t q : {2ull, 3ull, 5ull}) {
                  CensusOptions o;
                  o.q = q;
                  o.ext_degree = 6;
                  o.oracle_bound = 5;
                  o.jobs = opt.jobs;
                  CensusTable t = census(o);
                  require(t.all_agree(), "a census point disagrees with its verdict at q=" +
                                             std::to_string(q));
                  if (q == 2) {
                      require(t.row(0, 0) && t.row(0, 0)->max_aut_order == 6, "(0,0) is not S3");
                      require(t.row(0, 1) && t.row(0, 1)->max_aut_order == 1,
                              "(0,1) is not reduced-trivial");
                  }
                  if (q == 3) {
                      for (const auto& r : t.rows)
                          require(r.max_aut_order != 6, "an order-6 point exists in char 3");
                  }
                  if (q == 5) {
                      require(t.row(4, 2) && t.row(4, 2)->max_aut_order == 6,
                              "the cusp (4,2) is not S3");
                      for (const auto& r : t.rows)
                          if (!(r.s1_key == 4 && r.s2_key == 2))
                              require(r.max_aut_order <= 2, "unexpected large group off the cusp");
                  }
                  detail << "q=" << q << ":" << t.rows.size() << "pts ";
              }
          });

    R.run("C10", "symbolic identities: discriminant factorization, small-characteristic "
                 "reductions, u2 u1 = x^(q^2) y - x y^(q^2)",
          [&](std::ostringstream& detail) {
              for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull})
                  require(discriminant_identity_holds(p),
                          "discriminant identity fails mod " + std::to_string(p));
              {
                  Field F3 = create_field(3, 1);
                  BiPoly expect = bp_from_terms(
                      F3, {{2, 3, 0}, {1, 2, 1}, {-1, 2, 0}, {-1, 0, 2}, {-2, 1, 1}});
                  require(locus_cubic(F3).equals(expect), "char-3 reduction mismatch");
                  BiPoly line3 = bp_from_terms(F3, {{1, 0, 1}, {-2, 1, 0}});
                  require(per11_line(F3).equals(line3), "char-3 line reduction mismatch");
              }
              {
                  Field F2 = create_field(2, 1);
                  BiPoly expect = bp_from_terms(F2, {{1, 2, 1}, {-1, 2, 0}});
                  require(locus_cubic(F2).equals(expect), "char-2 reduction mismatch");
                  BiPoly line2 = bp_from_terms(F2, {{1, 0, 1}, {-1, 0, 0}});
                  require(per11_line(F2).equals(line2), "char-2 line reduction mismatch");
              }
              for (uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
                  auto [u1, u2] = fundamental_sl2_invariants(q);
                  HomPoly prod = hp_mul(u2, u1);
                  Field F = u1.F;
                  HomPoly expect = HomPoly::zero(F, static_cast<int>(q * q + 1));
                  expect.coeffs[q * q] = F->one();
                  expect.coeffs[1] = F->from_int(-1);
                  require(prod == expect, "u2*u1 identity fails at q=" + std::to_string(q));
              }
              detail << "p in {2,3,5,7,11}, q in {2,3,4,5}";
          });

    R.run("C11", "property suites: decomposition round-trip, coset law, spectrum invariance, "
                 "sigma relation, quadratic twist",
          [&](std::ostringstream& detail) {
              uint64_t state = 0x243f6a8885a308d3ull;
              auto rnd = [&]() {
                  state ^= state << 13;
                  state ^= state >> 7;
                  state ^= state << 17;
                  return state;
              };
              // decomposition round-trip, 100 admissible forms per p
              for (uint64_t p : {3ull, 5ull, 7ull}) {
                  Field F = create_field(p, 1);
                  int done = 0;
                  while (done < 100) {
                      int n = 1 + static_cast<int>(rnd() % 8);
                      if ((n + 1) % p == 0) continue;
                      HomPoly c1 = HomPoly::zero(F, n), c2 = HomPoly::zero(F, n);
                      for (int i = 0; i <= n; ++i) {
                          c1.coeffs[i] = F->from_key(rnd() % p);
                          c2.coeffs[i] = F->from_key(rnd() % p);
                      }
                      if (c1.is_zero() && c2.is_zero()) continue;
                      PolyForm theta = PolyForm::make(c1, c2);
                      Decomposition dec = decompose_form(theta);
                      PolyForm back = form_add(mul_lambda(dec.F), d_poly(dec.G));
                      require(back == theta, "round-trip mismatch");
                      ++done;
                  }
                  // rejection fixture: y^(p-1) dx admits no decomposition
                  HomPoly ydx = HomPoly::zero(F, static_cast<int>(p) - 1);
                  ydx.coeffs[0] = F->one();
                  bool threw = false;
                  try {
                      decompose_form(PolyForm::make(ydx, HomPoly::zero(F, static_cast<int>(p) - 1)));
                  } catch (const InvariantError&) {
                      threw = true;
                  }
                  require(threw, "y^(p-1) dx was not rejected at p=" + std::to_string(p));
              }
              // conjugacy coset law over GF(25), 50 pairs
              {
                  Field F5 = create_field(5, 1);
                  Field F25 = create_field(5, 2);
                  auto random_map = [&]() -> RatMap {
                      while (true) {
                          try {
                              HomPoly n = HomPoly::zero(F5, 2), d = HomPoly::zero(F5, 2);
                              for (int i = 0; i <= 2; ++i) {
                                  n.coeffs[i] = F5->from_key(rnd() % 5);
                                  d.coeffs[i] = F5->from_key(rnd() % 5);
                              }
                              RatMap f = normalize(n, d);
                              if (f.degree() == 2) return f;
                          } catch (const RatMapError&) {
                          }
                      }
                  };
                  GroupDesc pgl5 = enumerate_pgl2(F5, 5);
                  for (int i = 0; i < 50; ++i) {
                      RatMap f = random_map();
                      auto auts = conj_set(f, f, F25, 25);
                      RatMap g = i % 2 == 0
                                     ? conjugate(f, pgl5.elements[rnd() % pgl5.elements.size()])
                                     : random_map();
                      auto conj = conj_set(f, g, F25, 25);
                      require(conj.size() == 0 || conj.size() == auts.size(),
                              "coset cardinality law violated");
                      if (i % 2 == 0)
                          require(!conj.empty(), "conjugate pair reported non-conjugate");
                  }
              }
              // multiplier-spectrum invariance under conjugation, 100 samples
              {
                  Field F7 = create_field(7, 1);
                  GroupDesc pgl7 = enumerate_pgl2(F7, 7);
                  int done = 0;
                  while (done < 100) {
                      HomPoly n = HomPoly::zero(F7, 2), d = HomPoly::zero(F7, 2);
                      for (int i = 0; i <= 2; ++i) {
                          n.coeffs[i] = F7->from_key(rnd() % 7);
                          d.coeffs[i] = F7->from_key(rnd() % 7);
                      }
                      RatMap f = [&]() -> RatMap {
                          try {
                              return normalize(n, d);
                          } catch (const RatMapError&) {
                              return RatMap{};
                          }
                      }();
                      if (f.num.coeffs.empty() || f.degree() != 2) continue;
                      const Mobius& al = pgl7.elements[rnd() % pgl7.elements.size()];
                      RatMap g = conjugate(f, al);
                      int m = fixed_point_splitting_degree(f, 6);
                      int m2 = fixed_point_splitting_degree(g, 6);
                      Field K = create_field(7, static_cast<uint32_t>(std::lcm(m, m2)));
                      auto spectrum = [&](const RatMap& h) {
                          std::vector<uint64_t> keys;
                          for (const auto& pm : fixed_points(h, K)) {
                              uint64_t key = elem_key(multiplier(h.embedded(K), pm.P));
                              for (int i = 0; i < pm.mult; ++i) keys.push_back(key);
                          }
                          std::sort(keys.begin(), keys.end());
                          return keys;
                      };
                      require(spectrum(f) == spectrum(g), "multiplier spectrum not invariant");
                      ++done;
                  }
              }
              // sigma1 = sigma3 + 2 (checked on construction) over random maps
              {
                  Field F3 = create_field(3, 1);
                  int done = 0;
                  while (done < 50) {
                      HomPoly n = HomPoly::zero(F3, 2), d = HomPoly::zero(F3, 2);
                      for (int i = 0; i <= 2; ++i) {
                          n.coeffs[i] = F3->from_key(rnd() % 3);
                          d.coeffs[i] = F3->from_key(rnd() % 3);
                      }
                      try {
                          RatMap f = normalize(n, d);
                          if (f.degree() != 2) continue;
                          (void)sigma_invariants(f);  // throws if the relation fails
                          ++done;
                      } catch (const RatMapError&) {
                      }
                  }
              }
              // quadratic twist: z^q is conjugate to 1/z^q over GF(q^2)
              for (uint64_t q : {2ull, 3ull, 5ull}) {
                  Field Q = create_field_q(q);
                  Field Q2 = create_field(Q->p, 2 * Q->k);
                  RatMap zq = power_map(Q->one(), q).map.embedded(Q2);
                  Poly den((size_t)q + 1, Q2->zero());
                  den[q] = Q2->one();
                  RatMap inv_zq = ratmap_from_univariate(Poly{Q2->one()}, den);
                  Fe zeta = Q2->zero();
                  for (const Fe& w : roots_of_unity(Q2, q + 1))
                      if (Q2->mul_order(w) == q + 1) {
                          zeta = w;
                          break;
                      }
                  Mobius tau = Mobius::make(Q2->one(), zeta, zeta, Q2->one());
                  require(conjugate(zq, tau) == inv_zq, "explicit twist conjugation failed");
                  auto conj = conj_set(zq, inv_zq, Q2, 25);
                  require(conj.size() == pgl2_order(q),
                          "twist coset size mismatch at q=" + std::to_string(q));
              }
              detail << "all property suites ran";
          });

    return R.results;
}

int run_and_report(std::ostream& out, const Options& opt) {
    auto results = run_all(out, opt);
    int failures = 0;
    for (const auto& r : results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.description;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        char buf[32];
        std::snprintf(buf, sizeof buf, "  [%.2fs]", r.seconds);
        out << buf << "\n";
        if (!r.pass) ++failures;
    }
    out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
        << "\n";
    return failures;
}

}  // namespace p1dyn::selftest
