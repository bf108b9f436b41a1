#include "qfs/parameter.hpp"

#include <algorithm>

namespace qfs {

bool FocusedParameter::total() const {
  return std::all_of(value_index.begin(), value_index.end(), [](int k) { return k >= 0; });
}

int FocusedParameter::domain_size() const {
  return static_cast<int>(std::count_if(value_index.begin(), value_index.end(),
                                        [](int k) { return k >= 0; }));
}

std::vector<int> FocusedParameter::level_set(int k) const {
  std::vector<int> out;
  for (int p = 0; p < points(); ++p)
    if (value_index[p] == k) out.push_back(p);
  return out;
}

void FocusedParameter::validate() const {
  if (values.empty()) throw BadParameter(label + ": empty value list");
  if (value_index.empty()) throw BadParameter(label + ": empty point set");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw BadParameter(label + ": duplicate value " + std::to_string(values[i]));
  std::vector<bool> attained(values.size(), false);
  for (int p = 0; p < points(); ++p) {
    const int k = value_index[p];
    if (k < -1 || k >= value_count())
      throw BadParameter(label + ": value index out of range at point " + std::to_string(p));
    if (k >= 0) attained[k] = true;
  }
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!attained[k])
      throw BadParameter(label + ": value " + std::to_string(values[k]) + " is never attained");
}

FocusedParameter FocusedParameter::make(std::string label, std::vector<double> values,
                                        std::vector<int> value_index) {
  FocusedParameter out{std::move(label), std::move(values), std::move(value_index)};
  out.validate();
  return out;
}

}  // namespace qfs
