// Copyright 2026 The ueks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UEKS_ERRORS_HPP_
#define UEKS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ueks {

// Coarse classification used by front ends to pick exit codes.
enum class error_category {
  input,        // malformed arguments or data
  assumption,   // data violate a model assumption (ties)
  numeric,      // non-convergence, degeneracy, indeterminate ratios
};

class error : public std::runtime_error {
 public:
  error(error_category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  error_category category() const noexcept { return category_; }

 private:
  error_category category_;
};

#define UEKS_DEFINE_ERROR(name, cat)                                   \
  class name : public error {                                         \
   public:                                                            \
    explicit name(const std::string& what) : error(cat, what) {}      \
  }

UEKS_DEFINE_ERROR(domain_error, error_category::input);
UEKS_DEFINE_ERROR(parameter_error, error_category::input);
UEKS_DEFINE_ERROR(arity_error, error_category::input);
UEKS_DEFINE_ERROR(registry_error, error_category::input);
UEKS_DEFINE_ERROR(size_error, error_category::input);
UEKS_DEFINE_ERROR(precision_error, error_category::input);
UEKS_DEFINE_ERROR(parse_error, error_category::input);
UEKS_DEFINE_ERROR(tie_error, error_category::assumption);
UEKS_DEFINE_ERROR(divergence_error, error_category::numeric);
UEKS_DEFINE_ERROR(integration_error, error_category::numeric);
UEKS_DEFINE_ERROR(optimization_error, error_category::numeric);
UEKS_DEFINE_ERROR(degeneracy_error, error_category::numeric);
UEKS_DEFINE_ERROR(indeterminate_error, error_category::numeric);

#undef UEKS_DEFINE_ERROR

}  // namespace ueks

#endif  // UEKS_ERRORS_HPP_
