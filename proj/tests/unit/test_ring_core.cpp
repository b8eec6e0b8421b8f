#include <gtest/gtest.h>

#include <random>

#include "bcinv/gen_inverse/bc_inverse.hpp"
#include "bcinv/ring/finite_ring.hpp"
#include "bcinv/ring/modular_ring.hpp"
#include "bcinv/ring/value.hpp"

using namespace bcinv;

namespace {

std::vector<std::uint32_t> ids(const std::vector<Element>& xs) {
  std::vector<std::uint32_t> out;
  for (auto x : xs) out.push_back(x.id);
  return out;
}

}  // namespace

TEST(Modular, Arithmetic) {
  const ModularRing z6(6);
  EXPECT_EQ(z6.mul(z6.make(5), z6.make(5)), z6.one());
  EXPECT_EQ(z6.add(z6.make(4), z6.make(3)), z6.make(1));
  EXPECT_EQ(z6.make(-1), z6.make(5));
  EXPECT_TRUE(is_idempotent(z6, z6.make(4)));
  EXPECT_FALSE(is_idempotent(z6, z6.make(2)));
  EXPECT_EQ(invert(z6, z6.make(5)), z6.make(5));
  EXPECT_THROW(invert(z6, z6.make(2)), Error);
}

TEST(Modular, InnerInversesAndNormalization) {
  const ModularRing z6(6);
  EXPECT_EQ(ids(inner_inverses(z6, z6.make(2))), (std::vector<std::uint32_t>{2, 5}));
  EXPECT_EQ(inner_inverses(z6, z6.zero()).size(), 6u);
  EXPECT_EQ(canonical_inner_inverse(z6, z6.make(2)), z6.make(2));
  EXPECT_EQ(normalized_inner_inverse(z6, z6.make(2), z6.make(5)), z6.make(2));
  EXPECT_EQ(normalized_inner_inverse(z6, z6.make(5), z6.make(5)), z6.make(5));
  EXPECT_THROW(normalized_inner_inverse(z6, z6.make(2), z6.make(1)), Error);
  // Z_4: 2 is not regular (2*g*2 = 4g = 0).
  const ModularRing z4(4);
  EXPECT_THROW(inner_inverses(z4, z4.make(2)), Error);
}

TEST(Modular, Ideals) {
  const ModularRing z6(6);
  EXPECT_EQ(ids(ideal(z6, z6.make(2), IdealSide::ImageRight).members), (std::vector<std::uint32_t>{0, 2, 4}));
  EXPECT_EQ(ideal(z6, z6.one(), IdealSide::ImageRight).members.size(), 6u);
  EXPECT_EQ(ideal(z6, z6.zero(), IdealSide::KernelRight).members.size(), 6u);
  EXPECT_EQ(ids(ideal(z6, z6.make(2), IdealSide::KernelLeft).members), (std::vector<std::uint32_t>{0, 3}));
}

// Ring axioms over every triple of every small enumerable ring.
template <class R>
void exhaust_axioms(const R& r) {
  const auto n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = r.element(i);
    ASSERT_TRUE(r.equal(r.mul(x, r.one()), x));
    ASSERT_TRUE(r.equal(r.mul(r.one(), x), x));
    ASSERT_TRUE(r.equal(r.add(x, r.neg(x)), r.zero()));
    ASSERT_EQ(r.index(x), i);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto y = r.element(j), z = r.element(k);
        ASSERT_TRUE(r.equal(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z))));
        ASSERT_TRUE(r.equal(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z))));
        ASSERT_TRUE(r.equal(r.mul(r.add(y, z), x), r.add(r.mul(y, x), r.mul(z, x))));
      }
  }
}

TEST(Axioms, SmallRings) {
  for (std::uint32_t n : {4u, 6u, 8u, 9u, 12u}) exhaust_axioms(ModularRing(n));
  const PrimeMatrixRing m2f2(PrimeField{2}, 2);
  ASSERT_EQ(m2f2.size(), 16u);
  exhaust_axioms(m2f2);
  exhaust_axioms(FiniteRing::tabulate(m2f2, "M2F2", 16));
}

TEST(FiniteRing, TabulationMatchesSource) {
  const PrimeMatrixRing m2f2(PrimeField{2}, 2);
  const auto t = FiniteRing::tabulate(m2f2, "M2F2", 16);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j)
      EXPECT_EQ(t.mul(t.element(i), t.element(j)).id, m2f2.index(m2f2.mul(m2f2.element(i), m2f2.element(j))));
  EXPECT_THROW(FiniteRing::tabulate(m2f2, "M2F2", 8), Error);
}

TEST(MatrixRing, FloatToleranceAndShapes) {
  const RealMatrixRing r(RealField{}, 2);
  const Matrix<double> a{{1, 2}, {3, 4}};
  EXPECT_TRUE(r.equal(a, r.add(a, Matrix<double>{{1e-20, 0}, {0, 0}})));
  EXPECT_FALSE(r.equal(a, r.add(a, Matrix<double>{{1e-6, 0}, {0, 0}})));
  try {
    r.mul(a, Matrix<double>{{1, 2, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(RankFactorization, Examples) {
  const RealField f;
  const auto z = linalg::rank_factorization(f, Matrix<double>(2, 2));
  EXPECT_EQ(z.rank, 0u);
  const Matrix<double> ones{{1, 1}, {1, 1}};
  const auto rf = linalg::rank_factorization(f, ones);
  EXPECT_EQ(rf.rank, 1u);
  const auto back = mat::mul(f, rf.left, rf.right);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(back(i, j), 1.0, 1e-12);
  const RationalField q;
  const Matrix<Rational> d{{Rational(2), Rational(0)}, {Rational(0), Rational(0)}};
  const auto rq = linalg::rank_factorization(q, d);
  EXPECT_EQ(rq.rank, 1u);
  EXPECT_EQ(mat::mul(q, rq.left, rq.right), d);
}

// Random round trips: B*C = A, B full column rank, C full row rank, and the
// canonical inner inverse satisfies b*g*b = b.
TEST(RankFactorization, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  const RealField f;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6, r = trial % n;
    Matrix<double> x(n, r), y(r, n);
    for (auto& v : x.data()) v = gauss(rng);
    for (auto& v : y.data()) v = gauss(rng);
    const auto a = r == 0 ? Matrix<double>(n, n) : mat::mul(f, x, y);
    const auto rf = linalg::rank_factorization(f, a);
    ASSERT_EQ(rf.rank, r);
    if (r == 0) continue;
    const RealMatrixRing ring(f, n);
    EXPECT_TRUE(ring.negligible(ring.sub(mat::mul(f, rf.left, rf.right), a), ring.norm(a)));
    EXPECT_EQ(linalg::rank(f, rf.left), r);
    EXPECT_EQ(linalg::rank(f, rf.right), r);
    const auto g = canonical_inner_inverse(ring, a);
    EXPECT_TRUE(is_inner_inverse(ring, a, g));
  }
}

TEST(Exact, PrimeFieldInnerInversesEverywhere) {
  const PrimeMatrixRing m(PrimeField{3}, 2);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto b = m.element(i);
    EXPECT_TRUE(is_inner_inverse(m, b, canonical_inner_inverse(m, b))) << m.to_string(b);
  }
}

// Subspace realisation of ideals agrees with the element-set definition on M_2(F_2).
TEST(Ideals, SubspaceAgreesWithSets) {
  const PrimeMatrixRing m(PrimeField{2}, 2);
  for (auto side : {IdealSide::ImageRight, IdealSide::ImageLeft, IdealSide::KernelRight, IdealSide::KernelLeft})
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto x = m.element(i);
      const auto set = ideal_set(m, x, side);
      const auto sub = ideal_subspace(m, x, side);
      for (std::size_t j = 0; j < m.size(); ++j)
        EXPECT_EQ(set.contains(m.element(j)), ideal_contains(m, sub, m.element(j)))
            << to_string(side) << " x=" << m.to_string(x) << " y=" << m.to_string(m.element(j));
    }
}

TEST(Exact, RationalCornerMethodMatchesFactor) {
  const RationalMatrixRing q(RationalField{}, 2);
  using M = Matrix<Rational>;
  const M a{{Rational(2), Rational(1)}, {Rational(0), Rational(3)}};
  const M e11{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}};
  const auto fr = make_frame(q, e11, e11);
  const auto y = bc_inverse(q, a, fr, Method::Corner);
  EXPECT_EQ(y, (M{{Rational(1, 2), Rational(0)}, {Rational(0), Rational(0)}}));
  EXPECT_EQ(bc_inverse(q, a, fr, Method::Factor), y);
  EXPECT_EQ(bc_inverse(q, a, fr, Method::Group), y);
}

TEST(Descriptor, ParsesAllSpellings) {
  using K = RingDescriptor::Kind;
  EXPECT_EQ(parse_ring("Z6").kind, K::Modular);
  EXPECT_EQ(parse_ring("Zn:6"), parse_ring("Z6"));
  EXPECT_EQ(parse_ring("M2F2"), parse_ring("MFp:2:2"));
  EXPECT_EQ(parse_ring("MFp:3:2").p, 3u);
  EXPECT_EQ(parse_ring("Q:3").k, 3u);
  EXPECT_EQ(parse_ring("R:4", 1e-9).tolerance, 1e-9);
  EXPECT_EQ(to_string(parse_ring("M2F2")), "MFp:2:2");
  EXPECT_EQ(short_name(parse_ring("MFp:2:2")), "M2F2");
  for (const char* bad : {"Z1", "MFp:4:2", "R:0", "X:3", "Zn:", "M2G2"}) {
    try {
      parse_ring(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Value, ArithmeticAndMismatch) {
  const auto z6 = parse_ring("Z6");
  const auto five = parse_value(z6, std::string("5"));
  EXPECT_EQ(to_json(std::get<RingValue>(ring_arith(five, five, ArithOp::Mul))), Json(1));
  EXPECT_EQ(to_json(std::get<RingValue>(ring_arith(parse_value(z6, std::string("4")),
                                                   parse_value(z6, std::string("3")), ArithOp::Add))),
            Json(1));
  const auto r2 = parse_ring("R:2");
  const auto a = parse_value(r2, std::string("[[1,2],[3,4]]"));
  const auto b = parse_value(r2, std::string("[[1.00000000000000000001,2],[3,4]]"));
  EXPECT_TRUE(std::get<bool>(ring_arith(a, b, ArithOp::Eq)));
  try {
    ring_arith(five, a, ArithOp::Add);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RingMismatch);
  }
  try {
    parse_value(r2, std::string("[[1,2,3],[3,4,5]]"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Value, Literals) {
  const auto q2 = parse_ring("Q:2");
  EXPECT_EQ(to_json(parse_value(q2, std::string("diag(1/2, 0.25)"))), Json::parse(R"([["1/2",0],[0,"1/4"]])"));
  EXPECT_EQ(to_json(parse_value(q2, std::string("E12"))), Json::parse("[[0,1],[0,0]]"));
  EXPECT_EQ(to_json(parse_value(q2, std::string("I"))), Json::parse("[[1,0],[0,1]]"));
  const auto f3 = parse_ring("MFp:3:2");
  // 1/2 = 2 in F_3; -1 = 2.
  EXPECT_EQ(to_json(parse_value(f3, std::string(R"([["1/2",-1],[4,0]])"))), Json::parse("[[2,2],[1,0]]"));
  const auto z6 = parse_ring("Z6");
  EXPECT_EQ(to_json(parse_value(z6, std::string("-1"))), Json(5));
}
