#include "bcinv/cli/job.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "bcinv/ring/descriptor.hpp"

namespace bcinv::cli {

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"compute", "verify", "lab", "banach", "rol", "continuity"};
  return names;
}

namespace {

template <class T>
T field_as(const Json& doc, const char* key, const char* type) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::ParseError, std::string("field '") + key + "' must be " + type);
  }
}

}  // namespace

JobSpec parse_job(const Json& in) {
  require(in.is_object(), ErrorKind::ParseError, "a job document must be an object");
  const Json& doc = in.contains("schema") && in.contains("job") ? in.at("job") : in;
  require(doc.is_object(), ErrorKind::ParseError, "the 'job' field must be an object");
  static const std::set<std::string> known{"command", "ring",    "tol",    "elements", "frame", "method", "beta",
                                           "lambda0", "lambda",  "suite",  "family",   "n",     "cap",    "threads"};
  for (const auto& [key, _] : doc.items())
    require(known.count(key) > 0, ErrorKind::ParseError, "unknown job field '" + key + "'");

  JobSpec job;
  auto present = [&](const char* key) { return doc.contains(key) && !doc.at(key).is_null(); };
  if (present("command")) job.command = field_as<std::string>(doc, "command", "a string");
  if (present("ring")) job.ring = field_as<std::string>(doc, "ring", "a string");
  if (present("tol")) job.tol = field_as<double>(doc, "tol", "a number");
  if (present("elements")) {
    job.elements = doc.at("elements");
    require(job.elements.is_object(), ErrorKind::ParseError, "'elements' must map names to literals");
  }
  if (present("frame")) {
    job.frame = doc.at("frame");
    require(job.frame.is_object(), ErrorKind::ParseError, "'frame' must map roles to element names");
    for (const auto& [role, name] : job.frame.items())
      require(name.is_string(), ErrorKind::ParseError, "frame role '" + role + "' must name an element");
  }
  if (present("method")) job.method = field_as<std::string>(doc, "method", "a string");
  if (present("beta")) job.beta = field_as<double>(doc, "beta", "a number");
  if (present("lambda0")) job.lambda0 = field_as<double>(doc, "lambda0", "a number");
  if (present("lambda")) {
    const Json& l = doc.at("lambda");
    job.lambdas = l.is_array() ? field_as<std::vector<double>>(doc, "lambda", "a list of numbers")
                               : std::vector<double>{field_as<double>(doc, "lambda", "a number")};
  }
  if (present("suite")) job.suite = field_as<std::string>(doc, "suite", "a string");
  if (present("family")) job.family = field_as<std::string>(doc, "family", "a string");
  if (present("n")) job.n = field_as<long>(doc, "n", "an integer");
  if (present("cap")) job.cap = field_as<std::size_t>(doc, "cap", "a non-negative integer");
  if (present("threads")) job.threads = field_as<unsigned>(doc, "threads", "a non-negative integer");
  return job;
}

JobSpec load_job(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::ParseError, "cannot read job file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_job(Json::parse(buf.str()));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, "job file '" + path + "' is not valid JSON: " + e.what());
  }
}

double effective_tolerance(const JobSpec& job) {
  if (job.tol) return *job.tol;
  if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    require(end && *end == '\0' && t > 0.0, ErrorKind::ParseError,
            std::string(kToleranceEnv) + " must be a positive number, got '" + env + "'");
    return t;
  }
  return kDefaultTolerance;
}

Json to_json(const JobSpec& job) {
  Json j;
  j["command"] = job.command;
  std::string ring = job.ring;
  Json tol = nullptr;
  try {
    const auto d = parse_ring(job.ring, effective_tolerance(job));
    ring = to_string(d);
    if (!d.exact()) tol = d.tolerance;
  } catch (const Error&) {
  }
  j["ring"] = ring;
  j["tol"] = tol;
  j["elements"] = job.elements;
  j["frame"] = job.frame;
  j["method"] = job.method;
  j["beta"] = job.beta ? Json(*job.beta) : Json(nullptr);
  j["lambda0"] = job.lambda0 ? Json(*job.lambda0) : Json(nullptr);
  j["lambda"] = job.lambdas;
  j["suite"] = job.suite;
  j["family"] = job.family;
  j["n"] = job.n;
  j["cap"] = job.cap;
  j["threads"] = job.threads;
  return j;
}

int exit_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InverseAbsent:
    case ErrorKind::PropertyRefuted:
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::SpectralPreconditionFailed:
    case ErrorKind::NotRegular:
    case ErrorKind::NotInvertible:
    case ErrorKind::SingularCorner:
      return 1;
    case ErrorKind::ParseError:
    case ErrorKind::RingMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::PreconditionFailed:
    case ErrorKind::CapExceeded:
    case ErrorKind::MethodUnavailable:
      return 2;
  }
  return 2;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
  } else {
    out += csv_cell(path) + "," + csv_cell(j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace

std::string to_csv(const Json& report) {
  std::string out = "path,value\n";
  out += "status," + report.at("status").dump() + "\n";
  out += "outcome," + csv_cell(report.at("outcome").get<std::string>()) + "\n";
  for (const char* section : {"outputs", "residuals", "verdicts"})
    if (report.contains(section)) flatten(report.at(section), section, out);
  return out;
}

std::string summary(const Json& report) {
  std::ostringstream os;
  const auto& job = report.at("job");
  const std::string ring = job.value("ring", "");
  os << job.value("command", "?") << (ring.empty() ? "" : " on " + ring) << ": status " << report.at("status").get<int>()
     << " (" << report.at("outcome").get<std::string>() << ")\n";
  if (report.contains("diagnostic") && !report.at("diagnostic").is_null())
    os << "  " << report.at("diagnostic").value("message", "") << "\n";
  const auto& out = report.at("outputs");
  if (out.contains("y")) os << "  y = " << out.at("y").dump() << "\n";
  if (report.contains("verdicts"))
    for (const auto& [k, v] : report.at("verdicts").items()) os << "  " << k << ": " << v.dump() << "\n";
  return os.str();
}

}  // namespace bcinv::cli
