// Copyright 2026 The r3eval Authors
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

#ifndef R3__ERROR_HPP_
#define R3__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace r3
{

enum class Errc
{
  invalid_geometry,  // non-finite values or non-positive box dimensions
  domain,            // argument outside the mathematical domain (e.g. t < 0)
  parameter,         // invalid configuration value
  degenerate_box,    // zero-area image box
  frame_format,      // structurally invalid frame (missing ego, duplicate ids)
  parse,             // malformed input record
  spec,              // invalid scenario specification
  io,                // file system failure
};

const char * to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string & what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace r3

#endif  // R3__ERROR_HPP_
