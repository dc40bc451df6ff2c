// SPDX-License-Identifier: Apache-2.0
//
// mmwchan - millimeter-wave multipath channel statistics toolkit
// Copyright (C) 2026 mmwchan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMWCHAN_ERRORS_HPP
#define MMWCHAN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmwchan {

/// Input violates a documented precondition (sizes, signs, degenerate data).
class invalid_input : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// K-factor is undefined: one component carries all the received power.
class singular_k_factor : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A cluster validity index is not defined for the requested cluster count.
class undefined_index : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The operation has nothing to return (no qualifying bins, cells or paths).
class empty_result : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File-format violation, reported with the offending line.
class parse_error : public std::runtime_error {
  public:
    parse_error(std::string file, std::size_t line, const std::string &what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          m_file(std::move(file)),
          m_line(line) {}

    const std::string &file() const noexcept { return m_file; }
    std::size_t line() const noexcept { return m_line; }

  private:
    std::string m_file;
    std::size_t m_line;
};

} // namespace mmwchan

#endif
