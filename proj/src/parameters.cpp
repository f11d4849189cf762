#include "netdyn/parameters.hpp"

#include <stdexcept>
#include <string>

#include "netdyn/errors.hpp"

namespace netdyn {

ParamPart ParamPart::uniform(std::vector<double> value) {
  ParamPart part;
  part.offsets_ = {0, value.size()};
  part.values_ = std::move(value);
  return part;
}

ParamPart ParamPart::per_component(std::vector<double> scalars) {
  ParamPart part;
  part.per_component_ = true;
  part.offsets_.resize(scalars.size() + 1);
  for (std::size_t i = 0; i <= scalars.size(); ++i) part.offsets_[i] = i;
  part.values_ = std::move(scalars);
  return part;
}

ParamPart ParamPart::per_component(const std::vector<std::vector<double>>& values) {
  ParamPart part;
  part.per_component_ = true;
  for (const auto& v : values) {
    part.values_.insert(part.values_.end(), v.begin(), v.end());
    part.offsets_.push_back(part.values_.size());
  }
  return part;
}

ParamView ParamPart::at(std::size_t index) const {
  if (!per_component_) return {values_.data(), values_.size()};
  if (index + 1 >= offsets_.size()) {
    throw std::out_of_range("parameter index " + std::to_string(index) + " out of range (" +
                            std::to_string(size()) + " entries)");
  }
  return {values_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
}

std::span<double> ParamPart::mutable_at(std::size_t index) {
  const ParamView view = at(index);
  return {values_.data() + (view.data() - values_.data()), view.size()};
}

ParameterBundle ParameterBundle::global(std::vector<double> value) {
  return ParameterBundle(std::move(value));
}

ParameterBundle ParameterBundle::split(ParamPart vertex_part, ParamPart edge_part) {
  return ParameterBundle(Split{std::move(vertex_part), std::move(edge_part)});
}

ParamView ParameterBundle::resolve(Side side, std::size_t index) const {
  if (const auto* g = std::get_if<Global>(&data_)) return {g->data(), g->size()};
  const auto& s = std::get<Split>(data_);
  return side == Side::Vertex ? s.vertex.at(index) : s.edge.at(index);
}

ParamTable ParameterBundle::table(Side side) const {
  if (const auto* g = std::get_if<Global>(&data_)) return {g->data(), g->size(), nullptr, false};
  const auto& s = std::get<Split>(data_);
  return side == Side::Vertex ? s.vertex.table() : s.edge.table();
}

ParamPart& ParameterBundle::vertex_part() {
  if (auto* s = std::get_if<Split>(&data_)) return s->vertex;
  throw ParameterError("global parameter bundle has no vertex part");
}

ParamPart& ParameterBundle::edge_part() {
  if (auto* s = std::get_if<Split>(&data_)) return s->edge;
  throw ParameterError("global parameter bundle has no edge part");
}

const ParamPart& ParameterBundle::vertex_part() const {
  return const_cast<ParameterBundle*>(this)->vertex_part();
}

const ParamPart& ParameterBundle::edge_part() const {
  return const_cast<ParameterBundle*>(this)->edge_part();
}

}  // namespace netdyn
