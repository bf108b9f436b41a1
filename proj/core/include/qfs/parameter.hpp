#pragma once

#include <string>
#include <vector>

#include "qfs/common.hpp"

namespace qfs {

struct BadParameter : Error {
  using Error::Error;
};

// A focused parameter: a labelled function from the point set onto a finite
// ordered list of distinct values. `value_index[p]` is the index into `values`
// for point p, or -1 when p lies outside the parameter's domain (only reduced
// parameters have restricted domains).
struct FocusedParameter {
  std::string label;
  std::vector<double> values;
  std::vector<int> value_index;

  int points() const { return static_cast<int>(value_index.size()); }
  int value_count() const { return static_cast<int>(values.size()); }
  bool in_domain(int p) const { return value_index[p] >= 0; }
  bool total() const;
  int domain_size() const;

  // Points carrying value k, in increasing order.
  std::vector<int> level_set(int k) const;

  // Throws BadParameter unless values are distinct, indices are in range and
  // every value is attained on the domain.
  void validate() const;

  static FocusedParameter make(std::string label, std::vector<double> values,
                               std::vector<int> value_index);
};

}  // namespace qfs
