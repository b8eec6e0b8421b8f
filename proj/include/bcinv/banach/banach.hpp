#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bcinv::banach {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Spectral (operator 2-) norm.
template <class Derived>
double norm2(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(x.eval());
  return svd.singularValues()(0);
}

struct SpectralReport {
  Mat x;
  std::vector<Complex> eigenvalues;  ///< sorted by modulus, then argument
  double spectral_radius = 0.0;
  std::size_t zero_count = 0;        ///< eigenvalues classified as 0
  bool group_invertible = false;
  std::optional<Mat> group_inverse;
  std::optional<Mat> group_projection;  ///< x·x^♯
  /// Minimum real part / modulus over the nonzero eigenvalues (NaN when none).
  double min_nonzero_real = 0.0;
  double min_nonzero_modulus = 0.0;
};

SpectralReport spectrum(const Mat& x, double rank_tol = 1e-10);

/// a^{-(b,c)} computed by the group route v·(a·v)^♯, with v = B·Cᵣ from the
/// frame, plus the idempotents p = b·g and q = h·c of the canonical frame.
struct BcData {
  Mat a, b, c, v, p, q, y;
};

/// Throws InverseAbsent when a has no (b,c)-inverse.
BcData bc_data(const Mat& a, const Mat& b, const Mat& c);

/// v = B·Cᵣ for the canonical frame of (b, c); independent of a.
Mat corner_v(const Mat& b, const Mat& c);

/// Direct factor-method inverse, the reference for the representations.
Mat bc_inverse(const Mat& a, const Mat& b, const Mat& c);

struct QuadratureConfig {
  double tol = 1e-12;
  std::size_t max_panels = std::size_t{1} << 40;
};

struct IntegralResult {
  Mat value;     ///< ∫ v·e^{-(av)t} dt
  Mat mirrored;  ///< ∫ e^{-(va)t}·v dt
  double rho = 0.0;      ///< min real part over the nonzero spectrum of a·v
  double horizon = 0.0;  ///< truncation point T
  std::size_t panels = 0;
  double truncation_estimate = 0.0;  ///< ‖v‖·e^{-ρT}/ρ
  double mirror_gap = 0.0;           ///< relative difference of the two forms
};

IntegralResult integral_representation(const Mat& a, const Mat& v, const QuadratureConfig& cfg = {});

struct BetaChoice {
  double beta = 0.0;
  double contraction = 0.0;  ///< ‖p_va − β·v·a‖
};

BetaChoice choose_beta(const Mat& a, const Mat& v);

struct SeriesConfig {
  double tol = 1e-13;
  std::size_t max_terms = 2'000'000;
};

struct SeriesResult {
  Mat value;     ///< β Σ (1 − β·v·a)ⁿ·v
  Mat mirrored;  ///< β Σ v·(1 − β·a·v)ⁿ
  double beta = 0.0;
  double contraction = 0.0;           ///< ‖p_va − β·v·a‖
  double mirrored_contraction = 0.0;  ///< ‖p_av − β·a·v‖
  std::size_t terms = 0, mirrored_terms = 0;
  double tail_bound = 0.0;
  double mirror_gap = 0.0;
};

SeriesResult series_representation(const Mat& a, const Mat& v, double beta, const SeriesConfig& cfg = {});

struct LimitConfig {
  std::optional<double> lambda0;
  double tol = 1e-12;
  int max_steps = 60;
  double skip = 1e-12;  ///< distance to σ(−a·v) below which a λ is skipped
  int extrapolation_order = 6;
};

struct LimitResult {
  Mat value;     ///< lim v·(λ + a·v)^{-1}
  Mat mirrored;  ///< lim (λ + v·a)^{-1}·v
  Mat last_iterate;
  std::vector<double> lambdas;
  std::vector<double> gaps;  ///< successive differences of the raw iterates
  std::size_t skipped = 0;
  double mirror_gap = 0.0;
};

LimitResult limit_representation(const Mat& a, const Mat& v, const LimitConfig& cfg = {});

/// H as left multiplication by w = (a·v)^♯·a·p (H̃: right multiplication by
/// q·a·(v·a)^♯), with its defining restrictions checked numerically.
struct HOperator {
  Mat w;
  double norm = 0.0;
  double complement_residual = 0.0;  ///< ‖w·(1−p)‖ (H̃: ‖(1−q)·w‖)
  double inverse_residual = 0.0;     ///< ‖w·y − (a·v)^♯‖ (H̃: ‖y·w − (v·a)^♯‖)
  double range_residual = 0.0;       ///< H maps v·A back through L_v onto itself
  double sampled_ratio = 0.0;        ///< max ‖w·Z‖/‖Z‖ over samples (should equal norm)
  bool certified = false;
};

HOperator build_H(const Mat& a, const Mat& v, const Mat& p);
HOperator build_H_right(const Mat& a, const Mat& v, const Mat& q);

struct BoundReport {
  Complex lambda;
  bool right_sided = false;
  double measured = 0.0;
  double bound = 0.0;
  double radius = 0.0;  ///< 1/(‖a‖‖y‖²‖H‖)
  double margin = 0.0;  ///< 1 − |λ|/radius
  double norm_a = 0.0, norm_v = 0.0, norm_y = 0.0, norm_H = 0.0;
  bool degenerate = false;  ///< ‖a‖‖y‖‖H‖ = 0, deviation is 0
  bool holds = false;
};

BoundReport perturbation_bound(const Mat& a, const Mat& v, const Mat& p, Complex lambda);
BoundReport perturbation_bound_right(const Mat& a, const Mat& v, const Mat& q, Complex lambda);

struct DifferenceReport {
  double residual = 0.0;  ///< ‖lhs − rhs‖ / scale
  double absolute = 0.0;
  double scale = 0.0;
};

/// y2 − y1 against y2(q2−q1)(1−a1y1) + (1−y2a2)(p2−p1)y1 + y2(a1−a2)y1.
DifferenceReport difference_identity(const Mat& a1, const Mat& y1, const Mat& p1, const Mat& q1, const Mat& a2,
                                     const Mat& y2, const Mat& p2, const Mat& q2);
DifferenceReport difference_identity(const BcData& first, const BcData& second);

/// ‖(1 − p_va)·v‖ and ‖v·(1 − p_av)‖ relative to ‖v‖.
std::pair<double, double> annihilation_residuals(const Mat& a, const Mat& v);
/// ‖(v·a)^♯·v − v·(a·v)^♯‖ relative.
double group_route_gap(const Mat& a, const Mat& v);
/// Largest distance between the nonzero spectra of a·v and v·a (matched by sorting).
double spectral_symmetry_gap(const Mat& a, const Mat& v);

struct SequenceTerm {
  Mat a, b, c;
};

struct ContinuityReport {
  std::string family;
  std::vector<long> ns;
  std::vector<double> norms;       ///< ‖a_n^{-(b_n,c_n)}‖
  std::vector<double> deviations;  ///< ‖a_n^{-(b_n,c_n)} − a^{-(b,c)}‖, empty when the limit has none
  std::vector<double> input_gaps;  ///< ‖a_n − a‖ + ‖p_n − p‖ + ‖q_n − q‖
  bool limit_exists = false;
  bool bounded = false;
  bool convergent = false;
  bool monotone = false;
  double growth_exponent = 0.0;  ///< slope of log‖y_n‖ against log n over the tail
  std::string classification;    ///< "convergent" or "divergent"
  bool consistent = false;       ///< bounded ⟺ convergent
};

ContinuityReport continuity_experiment(const std::string& family, const std::function<SequenceTerm(long)>& term,
                                       const SequenceTerm& limit, const std::vector<long>& ns,
                                       double tol = 1e-3);

/// "bounded": diag(2+1/n, 3); "unbounded": diag(1/n, 3); "constant": diag(2,3); frames E11.
ContinuityReport continuity_family(const std::string& family, long n_max = 1000);

std::vector<long> default_schedule(long n_max);

}  // namespace bcinv::banach
