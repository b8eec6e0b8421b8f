#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bcinv/ring/descriptor.hpp"
#include "bcinv/ring/finite_ring.hpp"
#include "bcinv/ring/value.hpp"

namespace bcinv::lab {

struct LabConfig {
  std::size_t cap = 16;                   ///< largest |R| accepted
  std::uint64_t op_budget = 100'000'000;  ///< estimated elementary operations per suite
  std::size_t max_listed = 20;            ///< counterexamples kept in the report
  unsigned threads = 0;                   ///< 0 = hardware concurrency
};

/// Hard limit: ideals are stored as 64-bit masks.
inline constexpr std::size_t kMaxLabRingSize = 64;

struct Tally {
  std::uint64_t evaluated = 0;
  std::uint64_t held = 0;
};

struct Counterexample {
  std::vector<std::uint32_t> key;  ///< element ids in slot order, used for ordering
  std::vector<std::pair<std::string, std::string>> tuple;
  std::string statement;  ///< the pair of statements that disagree, or the failed identity
};

struct LabReport {
  std::string ring;
  std::string suite;
  std::vector<std::string> theorems;
  std::uint64_t space = 0;       ///< |R|^k for the k enumerated slots
  std::uint64_t examined = 0;    ///< tuples visited
  std::uint64_t admissible = 0;  ///< tuples meeting the hypotheses
  std::map<std::string, Tally> statements;
  std::map<std::string, std::uint64_t> counts;
  std::vector<Counterexample> counterexamples;  ///< lexicographically smallest first
  std::uint64_t counterexample_total = 0;

  bool certified() const { return counterexample_total == 0; }
};

FiniteRing tabulate(const RingDescriptor& d, std::size_t cap);

LabReport verify_equivalence_suite(const FiniteRing& r, const LabConfig& cfg = {});
LabReport verify_set_decomposition(const FiniteRing& r, const LabConfig& cfg = {});
LabReport verify_bott_duffin_section(const FiniteRing& r, const LabConfig& cfg = {});
LabReport verify_reverse_order(const FiniteRing& r, const LabConfig& cfg = {});

enum class Suite { Equivalences, Sets, BottDuffin, ReverseOrder };

Suite parse_suite(const std::string& name);
std::string to_string(Suite s);
LabReport run_suite(const FiniteRing& r, Suite s, const LabConfig& cfg = {});

Json to_json(const LabReport& report);

/// Z_4, Z_6, Z_8, Z_9, Z_12, M_2(F_2).
std::vector<RingDescriptor> default_rings();

}  // namespace bcinv::lab
