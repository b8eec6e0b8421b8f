#include <cmath>
#include <limits>

#include "bcinv/banach/banach.hpp"
#include "bcinv/cli/job.hpp"
#include "bcinv/gen_inverse/structure.hpp"
#include "bcinv/lab/lab.hpp"
#include "bcinv/ring/descriptor.hpp"
#include "bcinv/ring/eigen_bridge.hpp"

namespace bcinv::cli {

namespace {

using banach::Mat;

// Cross-checks on float data use the acceptance tolerances.
constexpr double kAgreeTol = 1e-6;
constexpr double kIdentityTol = 1e-10;

struct Sections {
  Json outputs = Json::object();
  Json residuals = Json::object();
  Json verdicts = Json::object();
  int status = 0;
  Json diagnostic = nullptr;

  void refute(const std::string& message, Json witness = nullptr) {
    status = 1;
    diagnostic = {{"kind", "PropertyRefuted"}, {"message", message}, {"witness", std::move(witness)}};
  }
};

bool is_representation(const std::string& m) { return m == "series" || m == "integral" || m == "limit"; }

template <class R>
std::optional<typename R::Elem> element(const R& r, const JobSpec& job, const std::string& role, bool required) {
  const std::string name = job.frame.contains(role) ? job.frame.at(role).get<std::string>() : role;
  if (!job.elements.contains(name)) {
    require(!required, ErrorKind::ParseError, "missing element '" + name + "' (role " + role + ")");
    return std::nullopt;
  }
  try {
    return parse_element(r, job.elements.at(name));
  } catch (const Error& e) {
    fail(e.kind(), "element '" + name + "': " + e.what());
  }
}

template <class R>
typename R::Elem need(const R& r, const JobSpec& job, const std::string& role) {
  return *element(r, job, role, true);
}

template <class R>
CornerFrame<R> frame_for(const R& r, const JobSpec& job, const std::string& suffix = "") {
  return make_frame(r, need(r, job, "b" + suffix), need(r, job, "c" + suffix), element(r, job, "g" + suffix, false),
                    element(r, job, "h" + suffix, false));
}

template <class R>
Json frame_json(const R& r, const CornerFrame<R>& fr) {
  return {{"b", element_to_json(r, fr.b)}, {"c", element_to_json(r, fr.c)}, {"g", element_to_json(r, fr.g)},
          {"h", element_to_json(r, fr.h)}, {"p", element_to_json(r, fr.p)}, {"q", element_to_json(r, fr.q)}};
}

template <class R>
void certificate_into(const R& r, const BcCertificate<R>& cert, Sections& s) {
  for (const auto& res : cert.residuals) s.residuals[res.name] = res.norm;
  s.outputs["witness"] = element_to_json(r, cert.witness);
}

Json matrix_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Json spectrum_json(const banach::SpectralReport& s) {
  Json eig = Json::array();
  for (auto z : s.eigenvalues) eig.push_back({z.real(), z.imag()});
  Json j = {{"eigenvalues", eig}, {"spectral_radius", s.spectral_radius}, {"group_invertible", s.group_invertible}};
  j["min_nonzero_real"] = std::isnan(s.min_nonzero_real) ? Json(nullptr) : Json(s.min_nonzero_real);
  j["group_projection"] = s.group_projection ? matrix_json(*s.group_projection) : Json(nullptr);
  return j;
}

Json bound_json(const banach::BoundReport& b) {
  return {{"lambda", {b.lambda.real(), b.lambda.imag()}},
          {"right_sided", b.right_sided},
          {"measured", b.measured},
          {"bound", b.bound},
          {"radius", std::isinf(b.radius) ? Json(nullptr) : Json(b.radius)},
          {"margin", b.margin},
          {"norm_a", b.norm_a},
          {"norm_v", b.norm_v},
          {"norm_y", b.norm_y},
          {"norm_H", b.norm_H},
          {"degenerate", b.degenerate},
          {"holds", b.holds}};
}

Json error_json(const Error& e) { return {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

const RealMatrixRing* as_real(const auto& r) {
  if constexpr (std::is_same_v<std::decay_t<decltype(r)>, RealMatrixRing>) return &r;
  return nullptr;
}

// Runs one representation; the value and its deviation from the reference.
Json representation(const std::string& method, const Mat& a, const Mat& v, const Mat& y, const JobSpec& job,
                    double tol, double& deviation) {
  Json j;
  Mat value;
  if (method == "integral") {
    const auto res = banach::integral_representation(a, v, {.tol = tol});
    value = res.value;
    j = {{"rho", res.rho}, {"horizon", res.horizon}, {"panels", res.panels},
         {"truncation_estimate", res.truncation_estimate}, {"mirror_gap", res.mirror_gap}};
  } else if (method == "series") {
    const double beta = job.beta ? *job.beta : banach::choose_beta(a, v).beta;
    const auto res = banach::series_representation(a, v, beta, {.tol = std::min(tol, 1e-13)});
    value = res.value;
    j = {{"beta", res.beta}, {"contraction", res.contraction}, {"mirrored_contraction", res.mirrored_contraction},
         {"terms", res.terms}, {"tail_bound", res.tail_bound}, {"mirror_gap", res.mirror_gap}};
  } else {
    banach::LimitConfig cfg;
    cfg.lambda0 = job.lambda0;
    cfg.tol = tol;
    const auto res = banach::limit_representation(a, v, cfg);
    value = res.value;
    j = {{"steps", res.lambdas.size()}, {"last_lambda", res.lambdas.empty() ? 0.0 : res.lambdas.back()},
         {"skipped", res.skipped}, {"mirror_gap", res.mirror_gap}};
  }
  deviation = banach::norm2(Mat(value - y)) / std::max(banach::norm2(y), 1e-300);
  if (banach::norm2(y) == 0.0) deviation = banach::norm2(value);
  j["value"] = matrix_json(value);
  j["relative_deviation"] = deviation;
  return j;
}

template <class R>
void cmd_compute(const R& r, const RingDescriptor& d, const JobSpec& job, Sections& s) {
  const auto a = need(r, job, "a");
  const auto fr = frame_for(r, job);
  s.outputs["frame"] = frame_json(r, fr);
  typename R::Elem y;
  if (is_representation(job.method)) {
    const auto* real = as_real(r);
    require(real != nullptr, ErrorKind::MethodUnavailable, "method '" + job.method + "' needs a real ring R:k");
    if constexpr (std::is_same_v<R, RealMatrixRing>) {
      const Mat ea = to_eigen(a), v = to_eigen(build_v(r, fr));
      const Mat ref = to_eigen(bc_inverse(r, a, fr, Method::Factor));
      double dev = 0.0;
      s.outputs["representation"] = representation(job.method, ea, v, ref, job, d.tolerance, dev);
      y = from_eigen(Mat(Mat::Zero(ea.rows(), ea.cols())));
      for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) = s.outputs["representation"]["value"][i][j].template get<double>();
      s.verdicts["agrees_with_factor"] = dev <= kAgreeTol;
    }
  } else {
    y = bc_inverse(r, a, fr, parse_method(job.method));
  }
  s.outputs["method"] = job.method == "auto" && !is_representation(job.method)
                            ? std::string(to_string(default_method(r)))
                            : job.method;
  s.outputs["y"] = element_to_json(r, y);
  const auto cert = verify_bc_inverse(r, a, fr, y);
  certificate_into(r, cert, s);
  s.verdicts["certificate"] = cert.verdict;
  if (!cert.verdict) s.refute("computed y fails the defining equations");
  if (s.verdicts.contains("agrees_with_factor") && !s.verdicts["agrees_with_factor"].template get<bool>())
    s.refute("representation disagrees with the factor method");
}

template <class R>
void cmd_verify(const R& r, const JobSpec& job, Sections& s) {
  const auto a = need(r, job, "a");
  const auto y = need(r, job, "y");
  const auto fr = frame_for(r, job);
  s.outputs["frame"] = frame_json(r, fr);
  const auto cert = verify_bc_inverse(r, a, fr, y);
  certificate_into(r, cert, s);
  s.verdicts["certificate"] = cert.verdict;
  if (!cert.verdict) {
    Json failed = Json::array();
    for (const auto& res : cert.residuals)
      if (!res.vanishes) failed.push_back({{"equation", res.name}, {"residual", res.norm}});
    s.refute("y is not the (b,c)-inverse of a", failed);
    return;
  }
  // With y certified, the neighbouring characterisations must agree with it.
  s.verdicts["outer_inverse"] = agree(r, product(r, y, a, y), y);
  s.verdicts["unique"] = agree(r, bc_inverse(r, a, fr), y);
  s.verdicts["hybrid_agrees"] = agree(r, hybrid_inverse(r, a, fr.b, fr.c), y);
  s.verdicts["annihilator_agrees"] = agree(r, annihilator_inverse(r, a, fr.b, fr.c), y);
  const auto uc = unit_consistency(r, a, fr);
  s.outputs["unit_consistency"] = {{"b_right_c_left", uc.b_right_c_left},
                                   {"y_invertible", uc.y_invertible},
                                   {"y_is_inverse_of_a", uc.y_is_inverse_of_a}};
  s.verdicts["unit_consistency"] = true;
  const auto dec = decompose_bc_invertible(r, a, fr);
  s.outputs["decomposition"] = {{"unit", element_to_json(r, dec.unit.x)}, {"rest", element_to_json(r, dec.rest)}};
  s.verdicts["decomposition"] = agree(r, r.add(dec.unit.x, dec.rest), a) && in_complement_set(r, dec.rest, fr);
  for (const auto& [k, v] : s.verdicts.items())
    if (!v.template get<bool>()) {
      s.refute("statement '" + k + "' fails for a certified y");
      return;
    }
}

void cmd_lab(const RingDescriptor& d, const JobSpec& job, Sections& s) {
  require(d.finite(), ErrorKind::PreconditionFailed, "lab needs a finite ring (Zn:n or MFp:p:k)");
  lab::LabConfig cfg;
  cfg.cap = job.cap;
  cfg.threads = job.threads;
  const auto ring = lab::tabulate(d, cfg.cap);
  std::vector<lab::Suite> suites;
  if (job.suite == "all")
    suites = {lab::Suite::Equivalences, lab::Suite::Sets, lab::Suite::BottDuffin, lab::Suite::ReverseOrder};
  else
    suites = {lab::parse_suite(job.suite)};
  Json reports = Json::array();
  std::uint64_t total = 0;
  for (auto suite : suites) {
    const auto rep = lab::run_suite(ring, suite, cfg);
    reports.push_back(lab::to_json(rep));
    s.verdicts[lab::to_string(suite)] = rep.certified();
    s.residuals[lab::to_string(suite) + ".counterexamples"] = rep.counterexample_total;
    total += rep.counterexample_total;
  }
  s.outputs["ring_size"] = ring.size();
  s.outputs["suites"] = reports;
  if (total > 0) s.refute(std::to_string(total) + " counterexamples", reports);
}

template <class R>
void cmd_rol(const R& r, const JobSpec& job, Sections& s) {
  const auto a1 = need(r, job, "a"), a2 = need(r, job, "a2");
  const auto f1 = frame_for(r, job), f2 = frame_for(r, job, "2");
  const auto res = reverse_order_law_check(r, a1, f1, a2, f2);
  s.outputs["obstruction"] = element_to_json(r, res.obstruction);
  s.outputs["product_inverse"] = res.product_inverse ? element_to_json(r, *res.product_inverse) : Json(nullptr);
  s.outputs["reversed_product"] = element_to_json(r, res.reversed_product);
  s.residuals["obstruction"] = r.norm(res.obstruction);
  s.verdicts["obstruction_vanishes"] = res.obstruction_vanishes;
  s.verdicts["law_holds"] = res.law_holds;
  s.verdicts["criterion_matches_law"] = true;
}

template <class R>
void cmd_banach(const R& r, const RingDescriptor& d, const JobSpec& job, Sections& s) {
  if constexpr (!std::is_same_v<R, RealMatrixRing>) {
    fail(ErrorKind::MethodUnavailable, "banach needs a real ring R:k");
  } else {
    require(job.method == "auto" || job.method == "all" || is_representation(job.method), ErrorKind::ParseError,
            "banach methods are series, integral, limit (or auto for all three)");
    const auto fr = frame_for(r, job);
    const Mat a = to_eigen(need(r, job, "a"));
    const Mat p = to_eigen(fr.p), q = to_eigen(fr.q), v = to_eigen(build_v(r, fr));
    const Mat y = to_eigen(bc_inverse(r, from_eigen(a), fr, Method::Factor));
    s.outputs["frame"] = frame_json(r, fr);
    s.outputs["v"] = matrix_json(v);
    s.outputs["y"] = matrix_json(y);
    s.outputs["spectrum_av"] = spectrum_json(banach::spectrum(a * v));
    s.outputs["spectrum_va"] = spectrum_json(banach::spectrum(v * a));

    const auto [ann_left, ann_right] = banach::annihilation_residuals(a, v);
    s.residuals["(1-p_va)*v"] = ann_left;
    s.residuals["v*(1-p_av)"] = ann_right;
    s.residuals["group_route"] = banach::group_route_gap(a, v);
    s.residuals["spectral_symmetry"] = banach::spectral_symmetry_gap(a, v);
    s.verdicts["annihilation"] = ann_left <= kIdentityTol && ann_right <= kIdentityTol;
    s.verdicts["group_route"] = s.residuals["group_route"].template get<double>() <= 1e-8;
    s.verdicts["spectral_symmetry"] = s.residuals["spectral_symmetry"].template get<double>() <= 1e-8;

    Json reps = Json::object();
    const bool all = !is_representation(job.method);
    for (const std::string m : {"integral", "series", "limit"}) {
      if (!all && m != job.method) continue;
      try {
        double dev = 0.0;
        reps[m] = representation(m, a, v, y, job, d.tolerance, dev);
        s.verdicts[m + "_agrees"] = dev <= kAgreeTol;
      } catch (const Error& e) {
        // Hypotheses that fail are reported; only a requested method is fatal.
        if (!all || (e.kind() != ErrorKind::SpectralPreconditionFailed && e.kind() != ErrorKind::PreconditionFailed))
          throw;
        reps[m] = {{"skipped", error_json(e)}};
      }
    }
    s.outputs["representations"] = reps;

    const auto H = banach::build_H(a, v, p);
    const auto Ht = banach::build_H_right(a, v, q);
    auto h_json = [](const banach::HOperator& h) {
      return Json{{"w", matrix_json(h.w)}, {"norm", h.norm}, {"complement_residual", h.complement_residual},
                  {"inverse_residual", h.inverse_residual}, {"range_residual", h.range_residual},
                  {"sampled_ratio", h.sampled_ratio}, {"certified", h.certified}};
    };
    s.outputs["H"] = h_json(H);
    s.outputs["H_right"] = h_json(Ht);
    s.verdicts["H_certified"] = H.certified && Ht.certified;

    std::vector<double> lambdas = job.lambdas;
    if (lambdas.empty()) {
      const double prod = banach::norm2(a) * std::pow(banach::norm2(y), 2) * H.norm;
      const double radius = prod > 0.0 ? 1.0 / prod : 1.0;
      lambdas = {radius / 2.0, radius / 10.0};
    }
    Json bounds = Json::array();
    bool holds = true;
    for (double l : lambdas) {
      const auto left = banach::perturbation_bound(a, v, p, l);
      const auto right = banach::perturbation_bound_right(a, v, q, l);
      bounds.push_back(bound_json(left));
      bounds.push_back(bound_json(right));
      holds = holds && left.holds && right.holds;
    }
    s.outputs["bounds"] = bounds;
    s.verdicts["bound_holds"] = holds;
    for (const auto& [k, val] : s.verdicts.items())
      if (!val.template get<bool>()) {
        s.refute("statement '" + k + "' fails");
        return;
      }
  }
}

void cmd_continuity(const RingDescriptor& d, const JobSpec& job, Sections& s) {
  require(job.n >= 2, ErrorKind::PreconditionFailed, "n must be at least 2");
  banach::ContinuityReport rep;
  if (job.family == "custom") {
    require(d.kind == RingDescriptor::Kind::RealMatrix, ErrorKind::MethodUnavailable,
            "a custom family needs a real ring R:k");
    const auto r = make_real_matrix(d);
    const Mat a = to_eigen(need(r, job, "a")), dir = to_eigen(need(r, job, "a2"));
    const Mat b = to_eigen(need(r, job, "b")), c = to_eigen(need(r, job, "c"));
    auto term = [=](long n) { return banach::SequenceTerm{a + dir / static_cast<double>(n), b, c}; };
    rep = banach::continuity_experiment("custom", term, {a, b, c}, banach::default_schedule(job.n));
  } else {
    rep = banach::continuity_family(job.family, job.n);
  }
  s.outputs["family"] = rep.family;
  s.outputs["n"] = rep.ns;
  s.outputs["norms"] = rep.norms;
  s.outputs["deviations"] = rep.limit_exists ? Json(rep.deviations) : Json(nullptr);
  s.outputs["input_gaps"] = rep.input_gaps;
  s.outputs["growth_exponent"] = rep.growth_exponent;
  s.outputs["classification"] = rep.classification;
  s.verdicts["limit_exists"] = rep.limit_exists;
  s.verdicts["bounded"] = rep.bounded;
  s.verdicts["convergent"] = rep.convergent;
  s.verdicts["monotone"] = rep.monotone;
  s.verdicts["bounded_iff_convergent"] = rep.consistent;
  if (!rep.consistent) s.refute("bounded norms and convergence disagree");
}

void dispatch(const JobSpec& job, Sections& s) {
  require(!job.command.empty(), ErrorKind::ParseError, "no command given");
  const auto& cmds = commands();
  require(std::find(cmds.begin(), cmds.end(), job.command) != cmds.end(), ErrorKind::ParseError,
          "unknown command '" + job.command + "'");
  const double tol = effective_tolerance(job);
  require(tol > 0.0, ErrorKind::ParseError, "tolerance must be positive");
  if (job.command == "continuity" && job.family != "custom" && job.ring.empty()) {
    cmd_continuity(parse_ring("R:2", tol), job, s);
    return;
  }
  require(!job.ring.empty(), ErrorKind::ParseError, "no ring given");
  const auto d = parse_ring(job.ring, tol);
  const std::string& m = job.method;
  require(m == "auto" || m == "all" || m == "corner" || m == "factor" || m == "group" || m == "exhaustive" ||
              is_representation(m),
          ErrorKind::ParseError, "unknown method '" + m + "'");
  if (job.command == "lab") return cmd_lab(d, job, s);
  if (job.command == "continuity") return cmd_continuity(d, job, s);
  with_ring(d, [&](const auto& r) {
    if (job.command == "compute") cmd_compute(r, d, job, s);
    else if (job.command == "verify") cmd_verify(r, job, s);
    else if (job.command == "rol") cmd_rol(r, job, s);
    else cmd_banach(r, d, job, s);
  });
}

std::string outcome_of(const Sections& s) {
  if (s.diagnostic.is_null()) return "ok";
  return s.diagnostic.at("kind").get<std::string>();
}

}  // namespace

RunResult run(const JobSpec& job) {
  Sections s;
  try {
    dispatch(job, s);
  } catch (const Error& e) {
    s.status = exit_status(e.kind());
    s.diagnostic = error_json(e);
  } catch (const nlohmann::json::exception& e) {
    s.status = 2;
    s.diagnostic = {{"kind", "ParseError"}, {"message", e.what()}};
  }
  RunResult out;
  out.status = s.status;
  out.report["schema"] = kReportSchema;
  out.report["job"] = to_json(job);
  out.report["status"] = s.status;
  out.report["outcome"] = outcome_of(s);
  out.report["diagnostic"] = s.diagnostic;
  out.report["outputs"] = s.outputs;
  out.report["residuals"] = s.residuals;
  out.report["verdicts"] = s.verdicts;
  return out;
}

}  // namespace bcinv::cli
