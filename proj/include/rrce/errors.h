// Copyright 2026 The RRCE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RRCE_ERRORS_H_
#define RRCE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rrce {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, non-finite costs, probabilities that do
// not lie on the simplex.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

// The joint action space m^n is above a configured cap. Callers must stay in
// rank-1 (mixture) form.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, unsigned long long requested,
              unsigned long long cap)
      : Error(what + " (requested " + std::to_string(requested) +
              " joint actions, cap " + std::to_string(cap) + ")"),
        requested_(requested),
        cap_(cap) {}

  unsigned long long requested() const { return requested_; }
  unsigned long long cap() const { return cap_; }

 private:
  unsigned long long requested_;
  unsigned long long cap_;
};

// A dense m^n allocation was attempted while a DenseAllocationGuard was
// active on the calling thread.
class DenseAllocationForbidden : public Error {
 public:
  using Error::Error;
};

class NoEquilibriumFound : public Error {
 public:
  using Error::Error;
};

class EmptyNashSet : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// The LP solver reported Infeasible, Unbounded or IterationLimit where the
// problem is known to have an optimum.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace rrce

#endif  // RRCE_ERRORS_H_
