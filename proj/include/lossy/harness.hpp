#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lossy/cvd_kernel.hpp"
#include "lossy/element_kernel.hpp"
#include "lossy/fvst_kernel.hpp"
#include "lossy/instances.hpp"
#include "lossy/lp.hpp"
#include "lossy/protocols.hpp"

namespace lossy {

using Json = nlohmann::ordered_json;

// Ground-truth caps for the brute-force comparisons.
inline constexpr std::size_t kHsOptCap = 18;
inline constexpr std::size_t kCvdOptCap = 25;
inline constexpr std::size_t kFvstOptCap = 20;

class CapExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

using AnyInstance = std::variant<HypergraphInstance, Graph, Tournament>;

Json to_json(const ElementSet& s);
Json to_json(const RationalAssignment& a);
Json to_json(const ElementKernelResult& r);
Json to_json(const ProtocolReport& r);
Json to_json(const CvdKernelResult& r);
Json to_json(const FvstKernelResult& r);

/// FNV-1a over the serialized text, as 16 hex digits.
std::string instance_digest(const AnyInstance& inst);

/// Dispatches on the `p hs` / `p edge` / `p tour` header.
AnyInstance parse_any(std::string_view text);
std::string serialize_any(const AnyInstance& inst);

/// Whitespace-separated element ids; lines starting with 'c' are comments.
ElementSet parse_solution(std::string_view text);

/// Everything a later `lift` needs, tagged with the kernel kind and the input digest.
Json lift_context(const AnyInstance& input, const ElementKernelResult& r);
Json lift_context(const AnyInstance& input, const CvdKernelResult& r);
Json lift_context(const AnyInstance& input, const FvstKernelResult& r);

/// Rebuilds the kernel bookkeeping from a lift context and lifts `s_prime`.
/// Throws std::invalid_argument if the context was produced for another input.
Solution lift_from_context(const AnyInstance& input, const Json& context, const ElementSet& s_prime);

/// Builds an instance from a generator description, e.g.
/// {"kind":"random_hs","n":60,"m":400,"d":3} or {"kind":"random_graph","n":40,"p":0.15}.
/// The run seed is used unless the description carries its own "seed".
AnyInstance generate(const Json& generator, std::uint64_t seed);

/// One experiment run: a method applied to one generated instance.
struct RunSpec {
  std::string method;  // lp | element_kernel | exact | dapprox | vc2 | dhs | rsz | cvd | fvst
  Json generator;
  std::uint64_t seed = 0;
  Rational epsilon{1, 2};
  Rational c{1, 5};
  int t = 3;
  Rational threshold{8};
  std::string oracle = "exact";  // exact | dapprox | adversarial:<beta>
  bool opt = true;

  static RunSpec from_json(const Json& j);
  Json to_json() const;
  ProtocolConfig protocol_config() const;
};

Oracle make_oracle(std::string_view description);

/// Executes one run; the record echoes the spec and carries the checks the
/// acceptance criteria are stated in. "wall_ms" is the only timing field.
Json run_one(const RunSpec& spec);

/// Record without timing fields, serialized compactly.
std::string canonical_line(const Json& record);

struct ExperimentResult {
  std::vector<Json> records;
  Json summary;
};

/// Spec: {"threads": k, "runs": [ {run fields..., "seeds": [..] | {"from": a, "count": n}} ]}.
/// Runs execute on a worker pool; records reach `sink` (one JSON line each) in sweep order.
ExperimentResult run_experiment(const Json& spec, std::ostream* sink = nullptr, std::size_t threads = 0);

Json summarize(const std::vector<Json>& records);

/// |method output| / opt against the exact optimum. Methods: "exact", "dapprox",
/// "element_kernel" for hitting sets; "cvd:<eps>" for graphs; "fvst:<eps>" for
/// tournaments. Returns nullopt when opt = 0 and the output is non-empty; an empty
/// output against opt = 0 yields 1. Throws CapExceeded above the size caps.
std::optional<Rational> compare_against_bruteforce(const AnyInstance& inst, std::string_view method);

}  // namespace lossy
