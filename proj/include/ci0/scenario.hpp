#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ci0/chains.hpp"
#include "ci0/errors.hpp"
#include "json.hpp"

namespace ci0 {

using Json = nlohmann::ordered_json;

/// Malformed ring, matrix or scenario input. Maps to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct RingSpec {
  std::string name;
  std::string field = "Q";
  std::vector<std::string> vars;
  std::vector<std::string> relations;
  std::string order = "degrevlex";
  std::string tag;
};

RingSpec ring_spec_from_json(const Json& j);
Json to_json(const RingSpec& r);
AlgebraPtr build_algebra(const RingSpec& r, const std::optional<std::string>& field_override = std::nullopt);

/// Reads a JSON file; parse errors are reported as "path:line: message".
Json read_json_file(const std::filesystem::path& path);

/// Computed value of an assertion. Ideals and elements compare by value
/// against their expected expressions; objects compare on the expected keys.
class Value {
 public:
  enum class Kind { Plain, Ideal, Element, Object, List };

  Value() = default;
  Value(Json j) : kind_(Kind::Plain), plain_(std::move(j)) {}
  Value(bool b) : Value(Json(b)) {}
  Value(IdealSubspace I) : kind_(Kind::Ideal), ideal_(std::make_shared<IdealSubspace>(std::move(I))) {}
  Value(AlgElement a) : kind_(Kind::Element), elem_(std::make_shared<AlgElement>(std::move(a))) {}
  static Value object() {
    Value v;
    v.kind_ = Kind::Object;
    return v;
  }
  static Value list(std::vector<Value> items) {
    Value v;
    v.kind_ = Kind::List;
    v.items_ = std::move(items);
    return v;
  }

  Kind kind() const { return kind_; }
  Value& set(const std::string& key, Value v);
  const Json& plain() const { return plain_; }
  const std::vector<std::pair<std::string, Value>>& fields() const { return fields_; }
  const Value* find(const std::string& key) const;

  Json to_json() const;
  /// True/false for boolean values or objects with a boolean "verdict" field.
  std::optional<bool> verdict() const;

 private:
  friend class Evaluator;
  Kind kind_ = Kind::Plain;
  Json plain_;
  std::shared_ptr<IdealSubspace> ideal_;
  std::shared_ptr<AlgElement> elem_;
  std::vector<std::pair<std::string, Value>> fields_;
  std::vector<Value> items_;
};

/// Evaluates ideal expressions, elements, matrices and assertion operations
/// over one algebra. Relative file references resolve against `base`.
class Evaluator {
 public:
  Evaluator(AlgebraPtr alg, std::filesystem::path base, std::uint64_t seed);

  const AlgebraPtr& algebra() const { return alg_; }
  std::uint64_t seed() const { return seed_; }

  AlgElement element(const Json& j) const;
  Row row(const Json& j) const;
  AlgMatrix matrix(const Json& j) const;
  IdealSubspace ideal(const Json& j) const;

  Value run(const std::string& op, const Json& args) const;
  bool matches(const Value& computed, const Json& expect) const;

  static const std::vector<std::string>& operations();

 private:
  AlgebraPtr alg_;
  std::filesystem::path base_;
  std::uint64_t seed_;
};

struct AssertionResult {
  std::size_t index = 0;
  std::string op;
  std::string note;
  bool pass = false;
  Json computed;
  Json expect;
  std::string error;
};

struct ScenarioResult {
  std::string file;
  std::string tag;
  std::string ring;
  std::uint64_t seed = 0;
  std::vector<AssertionResult> assertions;
  std::size_t passed() const;
  std::size_t failed() const;
};

struct Report {
  std::vector<ScenarioResult> scenarios;
  std::vector<std::string> warnings;
  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

Json to_json(const Report& r);
Report report_from_json(const Json& j);
std::string render_text(const Report& r);

/// Loads and runs one scenario file. Input errors throw InputError.
ScenarioResult run_scenario_file(const std::filesystem::path& path);
/// Runs every *.json scenario below `dir` in path order, using up to
/// `threads` workers (0 reads CI0_THREADS, default 1).
Report run_suite(const std::filesystem::path& dir, unsigned threads = 0);

}  // namespace ci0
