#include "strel/signal.hpp"

namespace strel {

Trace::Trace(std::vector<std::string> variables, std::vector<TemporalSignal<Sample>> per_location)
    : variables_(std::move(variables)), per_location_(std::move(per_location)) {
  if (per_location_.empty()) throw SemanticError("a trace needs at least one location");
  for (std::size_t i = 0; i < variables_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (variables_[i] == variables_[j])
        throw SemanticError("duplicate trace variable '" + variables_[i] + "'");
  for (std::size_t l = 0; l < per_location_.size(); ++l) {
    const auto& s = per_location_[l];
    if (s.empty()) throw SemanticError("location " + std::to_string(l) + " has no samples");
    for (const auto& step : s.steps())
      if (step.value.size() != variables_.size())
        throw SemanticError("location " + std::to_string(l) + " has a sample with " +
                            std::to_string(step.value.size()) + " values, expected " +
                            std::to_string(variables_.size()));
  }
  std::vector<double> grid =
      time_step_union(std::span<const TemporalSignal<Sample>>(per_location_));
  for (auto& s : per_location_) {
    if (s.size() == grid.size()) continue;
    std::vector<Sample> values = sample(s, std::span<const double>(grid));
    std::vector<TemporalSignal<Sample>::Step> steps;
    steps.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) steps.push_back({grid[k], std::move(values[k])});
    s = TemporalSignal<Sample>(std::move(steps), s.end_time());
  }
}

std::size_t Trace::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return npos;
}

TemporalSignal<double> Trace::variable(std::size_t location, std::size_t index) const {
  if (index >= variables_.size()) throw SemanticError("trace variable index out of range");
  const auto& s = per_location_.at(location);
  std::vector<TemporalSignal<double>::Step> steps;
  steps.reserve(s.size());
  for (const auto& step : s.steps()) steps.push_back({step.time, step.value[index]});
  return minimize(TemporalSignal<double>(std::move(steps), s.end_time()));
}

}  // namespace strel
