#include "bcinv/banach/banach.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "bcinv/error.hpp"
#include "bcinv/gen_inverse/bc_inverse.hpp"
#include "bcinv/ring/eigen_bridge.hpp"
#include "bcinv/ring/matrix_ring.hpp"

namespace bcinv::banach {

namespace {

constexpr double kCrossTol = 1e-6;

RealMatrixRing ring_for(const Mat& x) { return RealMatrixRing(RealField{}, static_cast<std::size_t>(x.rows())); }

void check_square(const Mat& x, Eigen::Index n, const char* name) {
  require(x.rows() == n && x.cols() == n, ErrorKind::DimensionMismatch,
          std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

std::optional<Mat> try_group_inverse(const Mat& x) {
  try {
    const auto r = ring_for(x);
    return to_eigen(group_inverse(r, from_eigen(x)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InverseAbsent) throw;
    return std::nullopt;
  }
}

Mat group_or_absent(const Mat& x, const char* what) {
  auto g = try_group_inverse(x);
  require(g.has_value(), ErrorKind::InverseAbsent, std::string(what) + " has no group inverse");
  return *g;
}

int numerical_rank(const Mat& x, double tol = 1e-10) {
  if (x.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(x);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

double relative_gap(const Mat& x, const Mat& y) {
  const double s = std::max({norm2(x), norm2(y), 1e-300});
  return norm2(x - y) / s;
}

// a^{-(b,c)} exists for the frame of v iff rank(v·a·v) = rank(v).
void require_inverse_exists(const Mat& a, const Mat& v) {
  const int rv = numerical_rank(v);
  require(numerical_rank(v * a * v) == rv, ErrorKind::InverseAbsent,
          "rank(v*a*v) < rank(v) = " + std::to_string(rv) + ": a has no (b,c)-inverse");
}

// Nonzero part of the spectrum of x, dropping the n - rank(x) smallest
// eigenvalues when x is group invertible (semisimple zero), otherwise by threshold.
std::vector<Complex> nonzero_spectrum(const SpectralReport& s) { 
  return {s.eigenvalues.begin() + static_cast<std::ptrdiff_t>(s.zero_count), s.eigenvalues.end()};
}

// 8-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 8> kNodes = {0.0198550717512319, 0.1016667612931866, 0.2372337950418355,
                                          0.4082826787521751, 0.5917173212478249, 0.7627662049581645,
                                          0.8983332387068134, 0.9801449282487681};
constexpr std::array<double, 8> kWeights = {0.0506142681451881, 0.1111905172266872, 0.1568533229389436,
                                            0.1813418916891810, 0.1813418916891810, 0.1568533229389436,
                                            0.1111905172266872, 0.0506142681451881};

CMat complex_solve_right(const Mat& v, const Mat& m, Complex lambda) {
  // v·(λ + m)^{-1}
  const auto n = m.rows();
  CMat shifted = m.cast<Complex>() + lambda * CMat::Identity(n, n);
  Eigen::PartialPivLU<CMat> lu(shifted.transpose());
  return lu.solve(v.cast<Complex>().transpose()).transpose();
}

CMat complex_solve_left(const Mat& m, const Mat& v, Complex lambda) {
  // (λ + m)^{-1}·v
  const auto n = m.rows();
  CMat shifted = m.cast<Complex>() + lambda * CMat::Identity(n, n);
  return shifted.partialPivLu().solve(v.cast<Complex>());
}

}  // namespace

SpectralReport spectrum(const Mat& x, double rank_tol) {
  require(x.rows() == x.cols(), ErrorKind::DimensionMismatch, "spectrum needs a square matrix");
  SpectralReport s;
  s.x = x;
  const auto n = x.rows();
  if (n == 0) return s;
  Eigen::EigenSolver<Mat> es(x, false);
  for (Eigen::Index i = 0; i < n; ++i) s.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](Complex u, Complex w) {
    if (std::abs(u) != std::abs(w)) return std::abs(u) < std::abs(w);
    return std::arg(u) < std::arg(w);
  });
  s.spectral_radius = std::abs(s.eigenvalues.back());
  s.group_inverse = try_group_inverse(x);
  s.group_invertible = s.group_inverse.has_value();
  if (s.group_invertible) {
    s.group_projection = x * *s.group_inverse;
    s.zero_count = static_cast<std::size_t>(n - numerical_rank(x, rank_tol));
  } else {
    const double cut = 1e-6 * std::max(norm2(x), 1e-300);
    s.zero_count = static_cast<std::size_t>(
        std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(), [&](Complex z) { return std::abs(z) <= cut; }));
  }
  const auto nz = nonzero_spectrum(s);
  if (nz.empty()) {
    s.min_nonzero_real = s.min_nonzero_modulus = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.min_nonzero_real = std::numeric_limits<double>::infinity();
    s.min_nonzero_modulus = std::numeric_limits<double>::infinity();
    for (auto z : nz) {
      s.min_nonzero_real = std::min(s.min_nonzero_real, z.real());
      s.min_nonzero_modulus = std::min(s.min_nonzero_modulus, std::abs(z));
    }
  }
  return s;
}

BcData bc_data(const Mat& a, const Mat& b, const Mat& c) {
  const auto n = a.rows();
  check_square(a, n, "a");
  check_square(b, n, "b");
  check_square(c, n, "c");
  const auto r = ring_for(a);
  const auto fr = make_frame(r, from_eigen(b), from_eigen(c));
  BcData d;
  d.a = a;
  d.b = b;
  d.c = c;
  d.p = to_eigen(fr.p);
  d.q = to_eigen(fr.q);
  d.v = to_eigen(build_v(r, fr));
  d.y = to_eigen(bcinv::bc_inverse(r, from_eigen(a), fr, Method::Group));
  return d;
}

Mat corner_v(const Mat& b, const Mat& c) {
  check_square(c, b.rows(), "c");
  const auto r = ring_for(b);
  return to_eigen(build_v(r, make_frame(r, from_eigen(b), from_eigen(c))));
}

Mat bc_inverse(const Mat& a, const Mat& b, const Mat& c) {
  const auto r = ring_for(a);
  const auto fr = make_frame(r, from_eigen(b), from_eigen(c));
  return to_eigen(bcinv::bc_inverse(r, from_eigen(a), fr, Method::Factor));
}

IntegralResult integral_representation(const Mat& a, const Mat& v, const QuadratureConfig& cfg) {
  const auto n = a.rows();
  check_square(a, n, "a");
  check_square(v, n, "v");
  IntegralResult res;
  res.value = res.mirrored = Mat::Zero(n, n);
  if (norm2(v) == 0.0) return res;
  require_inverse_exists(a, v);

  const Mat av = a * v, va = v * a;
  const auto spec = spectrum(av);
  const auto nz = nonzero_spectrum(spec);
  if (nz.empty()) return res;
  for (auto z : nz)
    require(z.real() > 1e-12 * spec.spectral_radius, ErrorKind::SpectralPreconditionFailed,
            "a*v has a nonzero eigenvalue with real part " + std::to_string(z.real()) +
                " <= 0; the integral form needs Re > 0 on the nonzero spectrum");
  res.rho = spec.min_nonzero_real;

  const double nav = std::max(norm2(av), norm2(va));
  res.horizon = std::log(1.0 / cfg.tol) / res.rho;
  const double h = std::min(res.horizon / 16.0, 0.5 / nav);

  // One Gauss-Legendre panel on [0, h]: G = ∫ e^{-av s} ds, E = e^{-av h}.
  Mat G = Mat::Zero(n, n), Gm = Mat::Zero(n, n);
  for (std::size_t j = 0; j < kNodes.size(); ++j) {
    G += (kWeights[j] * h) * (-av * (h * kNodes[j])).exp();
    Gm += (kWeights[j] * h) * (-va * (h * kNodes[j])).exp();
  }
  Mat E = (-av * h).exp(), Em = (-va * h).exp();

  // Pairwise reduction of equal panels: G(2T) = G(T) + E(T)·G(T), E(2T) = E(T)².
  // v = v·P exactly, P the spectral idempotent of av off zero; projecting keeps
  // rounding on the kernel of av from piling up linearly in t.
  const Mat P = av * group_or_absent(av, "a*v"), Pm = group_or_absent(va, "v*a") * va;
  const Mat vp = v * P, pv = Pm * v;
  const double nv = norm2(v);
  double t = h;
  res.panels = 1;
  double last_tail = std::numeric_limits<double>::infinity();
  for (;;) {
    if (t >= res.horizon) {
      const double tail = std::max(norm2(Mat(vp * E)), norm2(Mat(Em * pv))) / res.rho;
      const double scale = std::max(norm2(Mat(vp * G)), 1e-300);
      if (tail <= cfg.tol * scale) break;
      // Past the horizon a real tail drops by e^{-rho t} per doubling; one that
      // stalls is rounding in e^{-av t} (stiff, non-normal av).
      if (tail > 0.5 * last_tail && tail <= std::sqrt(cfg.tol) * scale) break;
      last_tail = tail;
    }
    if (2 * res.panels > cfg.max_panels)
      fail(ErrorKind::ConvergenceFailure, "integral needs more than " + std::to_string(cfg.max_panels) + " panels");
    G += E * G;
    Gm += Gm * Em;
    E = E * E;
    Em = Em * Em;
    t *= 2;
    res.panels *= 2;
  }
  res.value = vp * G;
  res.mirrored = Gm * pv;
  res.truncation_estimate = std::max(nv * std::exp(-res.rho * t) / res.rho, std::isfinite(last_tail) ? last_tail : 0.0);
  res.mirror_gap = relative_gap(res.value, res.mirrored);
  require(res.mirror_gap <= kCrossTol, ErrorKind::PropertyRefuted,
          "integral forms v*e^{-av t} and e^{-va t}*v disagree by " + std::to_string(res.mirror_gap));
  return res;
}

BetaChoice choose_beta(const Mat& a, const Mat& v) {
  const auto n = a.rows();
  check_square(a, n, "a");
  check_square(v, n, "v");
  if (norm2(v) == 0.0) return {1.0, 0.0};
  require_inverse_exists(a, v);
  const Mat va = v * a;
  const Mat p = va * group_or_absent(va, "v*a");
  const double nva = norm2(va);
  auto f = [&](double beta) { return norm2(p - beta * va); };
  double lo = -(1.0 + norm2(p)) / nva, hi = -lo;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    }
  }
  BetaChoice best{0.5 * (lo + hi), 0.0};
  best.contraction = f(best.beta);
  require(best.contraction < 1.0, ErrorKind::PreconditionFailed,
          "no real beta gives ||p_va - beta*v*a|| < 1 (best " + std::to_string(best.contraction) + ")");
  return best;
}

SeriesResult series_representation(const Mat& a, const Mat& v, double beta, const SeriesConfig& cfg) {
  const auto n = a.rows();
  check_square(a, n, "a");
  check_square(v, n, "v");
  SeriesResult res;
  res.beta = beta;
  res.value = res.mirrored = Mat::Zero(n, n);
  const double nv = norm2(v);
  if (nv == 0.0) return res;
  require_inverse_exists(a, v);
  const Mat av = a * v, va = v * a;
  const Mat I = Mat::Identity(n, n);
  res.contraction = norm2(va * group_or_absent(va, "v*a") - beta * va);
  res.mirrored_contraction = norm2(av * group_or_absent(av, "a*v") - beta * av);
  require(res.contraction < 1.0, ErrorKind::PreconditionFailed,
          "||p_va - beta*v*a|| = " + std::to_string(res.contraction) + " >= 1 for beta = " + std::to_string(beta));
  const double theta = res.contraction;

  const Mat step = I - beta * va;
  Mat term = v;
  double tail = std::abs(beta) * nv / (1.0 - theta);
  while (true) {
    if (res.terms >= cfg.max_terms)
      fail(ErrorKind::ConvergenceFailure, "series did not reach tolerance in " + std::to_string(cfg.max_terms) + " terms");
    res.value += beta * term;
    term = step * term;
    ++res.terms;
    tail *= theta;
    if (tail <= cfg.tol * std::max(norm2(res.value), 1e-300)) break;
  }
  res.tail_bound = tail;

  // Mirrored form: its own contraction when available, else increments.
  const Mat mstep = I - beta * av;
  term = v;
  double mtail = res.mirrored_contraction < 1.0 ? std::abs(beta) * nv / (1.0 - res.mirrored_contraction) : 0.0;
  int quiet = 0;
  while (true) {
    if (res.mirrored_terms >= cfg.max_terms)
      fail(ErrorKind::ConvergenceFailure, "mirrored series did not settle in " + std::to_string(cfg.max_terms) + " terms");
    res.mirrored += beta * term;
    term = term * mstep;
    ++res.mirrored_terms;
    const double scale = cfg.tol * std::max(norm2(res.mirrored), 1e-300);
    if (res.mirrored_contraction < 1.0) {
      mtail *= res.mirrored_contraction;
      if (mtail <= scale) break;
    } else {
      quiet = std::abs(beta) * norm2(term) <= scale ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  res.mirror_gap = relative_gap(res.value, res.mirrored);
  require(res.mirror_gap <= kCrossTol, ErrorKind::PropertyRefuted,
          "series forms disagree by " + std::to_string(res.mirror_gap));
  return res;
}

LimitResult limit_representation(const Mat& a, const Mat& v, const LimitConfig& cfg) {
  const auto n = a.rows();
  check_square(a, n, "a");
  check_square(v, n, "v");
  LimitResult res;
  res.value = res.mirrored = res.last_iterate = Mat::Zero(n, n);
  if (norm2(v) == 0.0) return res;
  const Mat av = a * v, va = v * a;
  const auto spec = spectrum(av);
  double lambda = cfg.lambda0.value_or(
      std::min(1.0, std::isnan(spec.min_nonzero_modulus) ? 1.0 : spec.min_nonzero_modulus / 2.0));
  require(lambda > 0.0, ErrorKind::PreconditionFailed, "lambda0 must be positive");

  // Richardson tables for both forms; the error is a power series in λ.
  const int order = std::max(0, cfg.extrapolation_order);
  std::vector<Mat> row, mrow;
  Mat prev_estimate, best, best_mirror;
  double best_change = std::numeric_limits<double>::infinity();
  int growth = 0, stale = 0;
  for (int step = 0; step < cfg.max_steps; ++step, lambda /= 2.0) {
    bool near = false;
    for (auto z : spec.eigenvalues) near = near || std::abs(lambda + z) < cfg.skip;
    if (near) {
      ++res.skipped;
      continue;
    }
    const CMat x = complex_solve_right(v, av, lambda);
    const CMat xm = complex_solve_left(va, v, lambda);
    const Mat raw = x.real(), mraw = xm.real();
    if (!res.lambdas.empty()) {
      res.gaps.push_back(norm2(raw - res.last_iterate));
      const auto k = res.gaps.size();
      growth = (k >= 2 && res.gaps[k - 1] > 1.5 * res.gaps[k - 2]) ? growth + 1 : 0;
      if (growth >= 4 || !raw.allFinite())
        fail(ErrorKind::ConvergenceFailure, "v*(lambda + a*v)^{-1} grows as lambda -> 0; the limit does not exist");
    }
    res.lambdas.push_back(lambda);
    res.last_iterate = raw;

    std::vector<Mat> next{raw}, mnext{mraw};
    for (int j = 1; j <= order && j <= static_cast<int>(row.size()); ++j) {
      const double f = std::ldexp(1.0, j) - 1.0;
      next.push_back(next[j - 1] + (next[j - 1] - row[j - 1]) / f);
      mnext.push_back(mnext[j - 1] + (mnext[j - 1] - mrow[j - 1]) / f);
    }
    row = std::move(next);
    mrow = std::move(mnext);
    const Mat estimate = row.back();
    if (prev_estimate.size() != 0 && row.size() > 1) {
      const double d = norm2(estimate - prev_estimate);
      const double scale = std::max(1.0, norm2(estimate));
      if (d < best_change) {
        best_change = d;
        best = estimate;
        best_mirror = mrow.back();
        stale = 0;
      } else {
        ++stale;
      }
      // Converged, or stuck at the rounding floor with a small enough change.
      if (d <= cfg.tol * scale || (stale >= 6 && best_change <= kCrossTol * 1e-2 * scale)) {
        res.value = best;
        res.mirrored = best_mirror;
        res.mirror_gap = relative_gap(res.value, res.mirrored);
        require(res.mirror_gap <= kCrossTol, ErrorKind::PropertyRefuted,
                "limit forms disagree by " + std::to_string(res.mirror_gap));
        return res;
      }
    }
    prev_estimate = estimate;
  }
  fail(ErrorKind::ConvergenceFailure,
       "lambda-limit did not settle within " + std::to_string(cfg.max_steps) + " halvings");
}

HOperator build_H(const Mat& a, const Mat& v, const Mat& p) {
  const auto n = a.rows();
  check_square(a, n, "a");
  check_square(v, n, "v");
  check_square(p, n, "p");
  const Mat I = Mat::Identity(n, n);
  const double scale = std::max({1.0, norm2(a), norm2(v), norm2(p)});
  require(norm2(p * p - p) <= 1e-9 * scale, ErrorKind::PreconditionFailed, "p is not idempotent");
  require(norm2(p * v - v) <= 1e-9 * scale * std::max(1.0, norm2(v)), ErrorKind::PreconditionFailed,
          "p*v != v: p does not project onto v*A");
  require(numerical_rank(p) == numerical_rank(v), ErrorKind::PreconditionFailed, "rank(p) != rank(v)");
  const Mat av = a * v;
  auto avs = try_group_inverse(av);
  require(avs.has_value(), ErrorKind::PreconditionFailed, "a*v has no group inverse, so H is undefined");
  if (norm2(v) > 0.0) require_inverse_exists(a, v);

  HOperator h;
  h.w = *avs * a * p;
  h.norm = norm2(h.w);
  const Mat y = v * *avs;
  const Mat p_av = av * *avs;
  h.complement_residual = norm2(h.w * (I - p));
  h.inverse_residual = norm2(h.w * y - *avs);
  // On u = v·z: v·(w·u) = u and w·u ∈ (a·v)A; linear in z, so z = I suffices.
  h.range_residual = std::max(norm2(v * h.w * v - v), norm2((I - p_av) * h.w * v));

  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> N;
  h.sampled_ratio = n > 0 ? 1.0 : 0.0;
  h.sampled_ratio = h.norm;  // Z = I
  for (int s = 0; s < 64 && n > 0; ++s) {
    Mat Z = Mat::NullaryExpr(n, n, [&] { return N(gen); });
    h.sampled_ratio = std::max(h.sampled_ratio, norm2(h.w * Z) / norm2(Z));
  }
  const double tol = 1e-9 * std::max(1.0, h.norm * scale * scale);
  h.certified = h.complement_residual <= tol && h.inverse_residual <= tol && h.range_residual <= tol &&
                h.sampled_ratio <= h.norm * (1 + 1e-10) + 1e-300;
  return h;
}

HOperator build_H_right(const Mat& a, const Mat& v, const Mat& q) {
  HOperator h = build_H(a.transpose(), v.transpose(), q.transpose());
  h.w.transposeInPlace();
  return h;
}

namespace {

BoundReport bound_impl(const Mat& a, const Mat& v, const Mat& e, Complex lambda, bool right) {
  const auto n = a.rows();
  const HOperator H = right ? build_H_right(a, v, e) : build_H(a, v, e);
  const Mat av = a * v, va = v * a;
  const Mat y = right ? Mat(group_or_absent(va, "v*a") * v) : Mat(v * group_or_absent(av, "a*v"));
  BoundReport b;
  b.lambda = lambda;
  b.right_sided = right;
  b.norm_a = norm2(a);
  b.norm_v = norm2(v);
  b.norm_y = norm2(y);
  b.norm_H = H.norm;
  const double prod = b.norm_a * b.norm_y * b.norm_H;
  b.radius = prod > 0.0 ? 1.0 / (b.norm_a * b.norm_y * b.norm_y * b.norm_H)
                        : std::numeric_limits<double>::infinity();
  b.margin = std::isinf(b.radius) ? 1.0 : 1.0 - std::abs(lambda) / b.radius;
  b.degenerate = prod == 0.0;
  if (lambda == Complex(0.0)) {
    b.holds = true;
    return b;
  }
  for (auto z : spectrum(right ? va : av).eigenvalues)
    require(std::abs(lambda + z) > 1e-12, ErrorKind::PreconditionFailed, "lambda lies in the spectrum of -a*v");
  require(std::abs(lambda) < b.radius, ErrorKind::PreconditionFailed,
          "|lambda| = " + std::to_string(std::abs(lambda)) + " is outside the admissible radius " +
              std::to_string(b.radius));
  const CMat approx = right ? complex_solve_left(va, v, lambda) : complex_solve_right(v, av, lambda);
  b.measured = norm2(CMat(y.cast<Complex>() - approx));
  const double l = std::abs(lambda);
  b.bound = b.degenerate ? 0.0
                         : l * b.norm_v * b.norm_a * std::pow(b.norm_y, 3) * b.norm_H * b.norm_H /
                               (1.0 - l * b.norm_a * b.norm_y * b.norm_y * b.norm_H);
  b.holds = b.measured <= b.bound * (1.0 + 1e-9) + 1e-13 * std::max(1.0, b.norm_y);
  (void)n;
  return b;
}

}  // namespace

BoundReport perturbation_bound(const Mat& a, const Mat& v, const Mat& p, Complex lambda) {
  return bound_impl(a, v, p, lambda, false);
}

BoundReport perturbation_bound_right(const Mat& a, const Mat& v, const Mat& q, Complex lambda) {
  return bound_impl(a, v, q, lambda, true);
}

DifferenceReport difference_identity(const Mat& a1, const Mat& y1, const Mat& p1, const Mat& q1, const Mat& a2,
                                     const Mat& y2, const Mat& p2, const Mat& q2) {
  const auto n = a1.rows();
  for (const Mat* m : {&a1, &y1, &p1, &q1, &a2, &y2, &p2, &q2}) check_square(*m, n, "operand");
  const Mat I = Mat::Identity(n, n);
  const Mat lhs = y2 - y1;
  const Mat t1 = y2 * (q2 - q1) * (I - a1 * y1);
  // Sign of this term: y2·a2·p2 = p2 and p1·y1 = y1 force a plus.
  const Mat t2 = (I - y2 * a2) * (p2 - p1) * y1;
  const Mat t3 = y2 * (a1 - a2) * y1;
  DifferenceReport d;
  d.absolute = norm2(lhs - (t1 + t2 + t3));
  d.scale = std::max({1.0, norm2(y1) + norm2(y2),
                      norm2(y2) * norm2(q2 - q1) * norm2(I - a1 * y1) +
                          norm2(I - y2 * a2) * norm2(p2 - p1) * norm2(y1) + norm2(y2) * norm2(a1 - a2) * norm2(y1)});
  d.residual = d.absolute / d.scale;
  return d;
}

DifferenceReport difference_identity(const BcData& first, const BcData& second) {
  return difference_identity(first.a, first.y, first.p, first.q, second.a, second.y, second.p, second.q);
}

std::pair<double, double> annihilation_residuals(const Mat& a, const Mat& v) {
  const auto n = a.rows();
  const double nv = norm2(v);
  if (nv == 0.0) return {0.0, 0.0};
  const Mat I = Mat::Identity(n, n);
  const Mat va = v * a, av = a * v;
  const Mat p_va = va * group_or_absent(va, "v*a");
  const Mat p_av = av * group_or_absent(av, "a*v");
  return {norm2((I - p_va) * v) / nv, norm2(v * (I - p_av)) / nv};
}

double group_route_gap(const Mat& a, const Mat& v) {
  const Mat lhs = group_or_absent(v * a, "v*a") * v;
  const Mat rhs = v * group_or_absent(a * v, "a*v");
  return relative_gap(lhs, rhs);
}

double spectral_symmetry_gap(const Mat& a, const Mat& v) {
  const auto s1 = nonzero_spectrum(spectrum(a * v));
  const auto s2 = nonzero_spectrum(spectrum(v * a));
  if (s1.size() != s2.size()) return std::numeric_limits<double>::infinity();
  // Greedy matching is enough for the small dimensions used here.
  std::vector<bool> used(s2.size(), false);
  double worst = 0.0;
  for (auto z : s1) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s2.size(); ++j)
      if (!used[j] && std::abs(z - s2[j]) < bd) {
        bd = std::abs(z - s2[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, bd / std::max(1.0, std::abs(z)));
  }
  return worst;
}

std::vector<long> default_schedule(long n_max) {
  std::vector<long> ns;
  for (long base = 1; base <= n_max; base *= 10)
    for (long m : {1L, 2L, 5L})
      if (base * m <= n_max) ns.push_back(base * m);
  if (ns.empty() || ns.back() != n_max) ns.push_back(n_max);
  return ns;
}

ContinuityReport continuity_experiment(const std::string& family, const std::function<SequenceTerm(long)>& term,
                                       const SequenceTerm& limit, const std::vector<long>& ns, double tol) {
  require(ns.size() >= 2, ErrorKind::PreconditionFailed, "continuity needs at least two sample indices");
  ContinuityReport rep;
  rep.family = family;
  rep.ns = ns;
  std::optional<BcData> lim;
  try {
    lim = bc_data(limit.a, limit.b, limit.c);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InverseAbsent) throw;
  }
  rep.limit_exists = lim.has_value();
  const auto r = ring_for(limit.a);
  const auto lim_frame = make_frame(r, from_eigen(limit.b), from_eigen(limit.c));
  const Mat lp = to_eigen(lim_frame.p), lq = to_eigen(lim_frame.q);
  for (long k : ns) {
    const auto t = term(k);
    const BcData d = bc_data(t.a, t.b, t.c);
    rep.norms.push_back(norm2(d.y));
    rep.input_gaps.push_back(norm2(t.a - limit.a) + norm2(d.p - lp) + norm2(d.q - lq));
    if (lim) rep.deviations.push_back(norm2(d.y - lim->y));
  }
  // Growth exponent over the upper half of the schedule.
  const std::size_t from = ns.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size() - from);
  for (std::size_t i = from; i < ns.size(); ++i) {
    const double x = std::log(static_cast<double>(ns[i])), y = std::log(std::max(rep.norms[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  rep.growth_exponent = den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
  rep.bounded = rep.growth_exponent < 0.25;
  if (lim) {
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.deviations.size(); ++i)
      rep.monotone = rep.monotone && rep.deviations[i] <= rep.deviations[i - 1] * (1 + 1e-12) + 1e-15;
    rep.convergent = rep.deviations.back() <= tol * std::max(1.0, norm2(lim->y));
  }
  rep.classification = rep.convergent ? "convergent" : "divergent";
  rep.consistent = rep.bounded == rep.convergent;
  return rep;
}

ContinuityReport continuity_family(const std::string& family, long n_max) {
  Mat e11 = Mat::Zero(2, 2);
  e11(0, 0) = 1.0;
  auto diag = [](double x, double y) {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = x;
    d(1, 1) = y;
    return d;
  };
  std::function<SequenceTerm(long)> term;
  SequenceTerm limit;
  if (family == "bounded") {
    term = [=](long n) { return SequenceTerm{diag(2.0 + 1.0 / n, 3.0), e11, e11}; };
    limit = {diag(2.0, 3.0), e11, e11};
  } else if (family == "unbounded") {
    term = [=](long n) { return SequenceTerm{diag(1.0 / n, 3.0), e11, e11}; };
    limit = {diag(0.0, 3.0), e11, e11};
  } else if (family == "constant") {
    term = [=](long) { return SequenceTerm{diag(2.0, 3.0), e11, e11}; };
    limit = {diag(2.0, 3.0), e11, e11};
  } else {
    fail(ErrorKind::ParseError, "unknown family '" + family + "' (bounded|unbounded|constant|custom)");
  }
  return continuity_experiment(family, term, limit, default_schedule(n_max));
}

}  // namespace bcinv::banach
