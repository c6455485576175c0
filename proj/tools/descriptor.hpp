#pragma once

#include "affind/experiment.hpp"
#include "affind/verifier.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace affind::cli {

using Json = nlohmann::ordered_json;

/// Malformed descriptor; `field` is the dotted path of the offending entry.
class DescriptorError : public std::invalid_argument {
 public:
  DescriptorError(std::string field, const std::string& what)
      : std::invalid_argument("field '" + field + "': " + what), field_(std::move(field)), detail_(what) {}
  const std::string& field() const { return field_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

/// Everything a command may read, after validation.
struct Descriptor {
  ExperimentSpec spec;
  std::optional<Degree> weight;         ///< invariants
  int bound = 2;                        ///< algebra-check, parabolic, induce
  std::size_t samples = 0;              ///< algebra-check, 0 = exhaustive
  int kmax = 5;                         ///< parabolic
  int k = 1;                            ///< admissible
  int depth = 4;                        ///< admissible
  std::vector<ModeWord> u;              ///< lemma-heis
  int N_lo = 2, N_hi = 8;               ///< lemma-heis
  bool force = false;                   ///< theorem2
  std::optional<std::uint64_t> scramble;  ///< factorize
};

/// Keys accepted at the top level of a descriptor or suite step.
const std::vector<std::string>& descriptor_keys();

Descriptor parse_descriptor(const Json& j);
/// Normalized echo of the configuration part, used in reports.
Json config_json(const ExperimentSpec& spec);

/// "-1,0;2" → finite coefficients (-1,0), δ-offset 2. Throws std::invalid_argument.
Degree parse_weight(const std::string& text, int rank);
/// "2..8" or "5"
std::pair<int, int> parse_range(const std::string& text);
/// "-1" or "-2,-1" or "-1@2": loop degrees of x-modes, optionally @generator (1-based).
ModeWord parse_word(const std::string& text);
std::string word_str(const ModeWord& u);

}  // namespace affind::cli
