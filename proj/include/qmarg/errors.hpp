// Copyright 2026 The qmarg Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qmarg {

// Root of every error the library throws. The CLI maps all of these to exit
// code 2; a negative compatibility verdict is never an error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// A precondition on numeric content (hermiticity, sortedness, ranges) failed.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The query lies outside the set the requested witness is built for.
class MembershipError : public Error {
 public:
  using Error::Error;
};

// A witness was assembled but failed its own verification.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmarg
