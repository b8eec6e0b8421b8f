#include <gtest/gtest.h>

#include <optional>

#include "bcinv/gen_inverse/bc_inverse.hpp"
#include "bcinv/lab/lab.hpp"

using namespace bcinv;
using namespace bcinv::lab;

namespace {

void expect_certified(const LabReport& rep) {
  EXPECT_TRUE(rep.certified()) << rep.ring << "/" << rep.suite << ": " << rep.counterexample_total
                               << " counterexamples, first: "
                               << (rep.counterexamples.empty() ? "" : rep.counterexamples.front().statement);
  for (const auto& [name, tally] : rep.statements) EXPECT_GT(tally.evaluated, 0u) << name;
}

}  // namespace

TEST(Lab, EquivalencesOnDefaultRings) {
  for (const auto& d : default_rings()) {
    const auto r = tabulate(d, 16);
    const auto rep = verify_equivalence_suite(r);
    expect_certified(rep);
    const std::uint64_t n = r.size();
    EXPECT_EQ(rep.space, n * n * n * n);
    EXPECT_EQ(rep.examined, rep.space);
  }
}

TEST(Lab, SetsOnDefaultRings) {
  for (const auto& d : default_rings()) expect_certified(verify_set_decomposition(tabulate(d, 16)));
}

TEST(Lab, BottDuffinOnDefaultRings) {
  for (const auto& d : default_rings()) {
    const auto r = tabulate(d, 16);
    const auto rep = verify_bott_duffin_section(r);
    expect_certified(rep);
    EXPECT_EQ(rep.examined, std::uint64_t{r.size()} * r.size() * r.size());
  }
}

TEST(Lab, ReverseOrderOnDefaultRings) {
  for (const auto& d : default_rings()) expect_certified(verify_reverse_order(tabulate(d, 16)));
}

TEST(Lab, ReverseOrderHasWitnessedFailuresOnM2F2) {
  const auto rep = verify_reverse_order(tabulate(parse_ring("M2F2"), 16));
  expect_certified(rep);
  EXPECT_GT(rep.counts.at("law fails, obstruction nonzero"), 0u);
  EXPECT_GT(rep.counts.at("law holds"), 0u);
}

// The invertible set for (b,c) = (4,4) in Z_6, listed by brute force.
TEST(Lab, Z6InvertibleSet) {
  const ModularRing z6(6);
  const auto four = z6.make(4);
  const auto fr = make_frame(z6, four, four, four, four);
  std::vector<std::uint32_t> members;
  for (std::uint32_t a = 0; a < 6; ++a)
    if (try_bc_inverse(z6, z6.make(a), fr, Method::Exhaustive)) members.push_back(a);
  EXPECT_EQ(members, (std::vector<std::uint32_t>{1, 2, 4, 5}));
}

TEST(Lab, CapsAndDeterminism) {
  const auto r = tabulate(parse_ring("M2F2"), 16);
  LabConfig small;
  small.cap = 8;
  try {
    verify_equivalence_suite(r, small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
  LabConfig tiny;
  tiny.op_budget = 1000;
  EXPECT_THROW(verify_reverse_order(r, tiny), Error);
  EXPECT_THROW(tabulate(parse_ring("Z17"), 16), Error);

  LabConfig one, four;
  one.threads = 1;
  four.threads = 4;
  EXPECT_EQ(to_json(verify_set_decomposition(r, one)), to_json(verify_set_decomposition(r, four)));
}

// Library check (p·y = y = y·q, y in bRc, equations) against the bare
// definition y in bRy ∩ yRc, y·a·b = b, c·a·y = c, by enumeration.
TEST(Lab, MembershipCheckMatchesLiteralDefinition) {
  for (const char* name : {"Z6", "Z8", "M2F2"}) {
    const auto r = tabulate(parse_ring(name), 16);
    const std::size_t n = r.size();
    auto in_left = [&](auto x, auto s, auto y) {  // y in x·R·s ?
      for (std::size_t i = 0; i < n; ++i)
        if (r.equal(r.mul(r.mul(x, r.element(i)), s), y)) return true;
      return false;
    };
    std::size_t agreed = 0;
    for (std::size_t bi = 0; bi < n; ++bi)
      for (std::size_t ci = 0; ci < n; ++ci) {
        const auto b = r.element(bi), c = r.element(ci);
        std::optional<CornerFrame<FiniteRing>> fr;
        try {
          fr = make_frame(r, b, c);
        } catch (const Error&) {
          continue;
        }
        for (std::size_t ai = 0; ai < n; ++ai)
          for (std::size_t yi = 0; yi < n; ++yi) {
            const auto a = r.element(ai), y = r.element(yi);
            const bool literal = in_left(b, y, y) && in_left(y, c, y) && r.equal(r.mul(r.mul(y, a), b), b) &&
                                 r.equal(r.mul(r.mul(c, a), y), c);
            EXPECT_EQ(verify_bc_inverse(r, a, *fr, y).verdict, literal)
                << name << " a=" << r.to_string(a) << " b=" << r.to_string(b) << " c=" << r.to_string(c)
                << " y=" << r.to_string(y);
            ++agreed;
          }
      }
    EXPECT_GT(agreed, 0u);
  }
}
