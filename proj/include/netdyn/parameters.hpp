#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace netdyn {

/// What a component callable receives as its parameter: a read-only view of reals.
/// Scalar parameters are views of length 1.
using ParamView = std::span<const double>;

enum class Side { Vertex, Edge };

/// Unchecked per-index view of one side of a bundle, for loops that have
/// already validated the part against the component count.
class ParamTable {
 public:
  ParamTable(const double* values, std::size_t n_values, const std::size_t* offsets, bool per_component)
      : values_(values), n_values_(n_values), offsets_(offsets), per_component_(per_component) {}

  ParamView operator[](std::size_t index) const {
    if (!per_component_) return {values_, n_values_};
    return {values_ + offsets_[index], offsets_[index + 1] - offsets_[index]};
  }

 private:
  const double* values_;
  std::size_t n_values_;
  const std::size_t* offsets_;
  bool per_component_;
};

/// Parameters for one side of the network: either one value shared by every
/// component or one value per component (indexed like the vertices/edges).
class ParamPart {
 public:
  static ParamPart uniform(double value) { return uniform(std::vector<double>{value}); }
  static ParamPart uniform(std::vector<double> value);
  /// One scalar per component.
  static ParamPart per_component(std::vector<double> scalars);
  /// One vector per component; lengths may differ.
  static ParamPart per_component(const std::vector<std::vector<double>>& values);

  bool is_per_component() const noexcept { return per_component_; }
  /// Number of per-component entries (1 for uniform parts).
  std::size_t size() const noexcept { return offsets_.size() - 1; }

  ParamView at(std::size_t index) const;
  /// Writable access for event handlers that retune parameters mid-run.
  std::span<double> mutable_at(std::size_t index);

  ParamTable table() const { return {values_.data(), values_.size(), offsets_.data(), per_component_}; }

 private:
  ParamPart() = default;

  bool per_component_ = false;
  std::vector<double> values_;
  std::vector<std::size_t> offsets_{0};
};

/// Parameters handed to a network function.
///
/// global(v): every vertex and edge sees the whole vector v.
/// split(vp, ep): vertices resolve against vp, edges against ep.
class ParameterBundle {
 public:
  static ParameterBundle global(std::vector<double> value);
  static ParameterBundle global(double value) { return global(std::vector<double>{value}); }
  static ParameterBundle split(ParamPart vertex_part, ParamPart edge_part);
  /// No parameters; components see an empty view.
  static ParameterBundle none() { return global(std::vector<double>{}); }

  bool is_split() const noexcept { return std::holds_alternative<Split>(data_); }

  ParamView resolve(Side side, std::size_t index) const;
  /// Unchecked lookup table for one side; see ParamTable.
  ParamTable table(Side side) const;

  ParamPart& vertex_part();
  ParamPart& edge_part();
  const ParamPart& vertex_part() const;
  const ParamPart& edge_part() const;

 private:
  struct Split {
    ParamPart vertex;
    ParamPart edge;
  };
  using Global = std::vector<double>;

  explicit ParameterBundle(std::variant<Global, Split> data) : data_(std::move(data)) {}

  std::variant<Global, Split> data_;
};

/// Free-function form of ParameterBundle::resolve. Throws std::out_of_range
/// when a per-component part has no entry for `index`.
inline ParamView resolve_param(const ParameterBundle& p, Side side, std::size_t index) {
  return p.resolve(side, index);
}

}  // namespace netdyn
