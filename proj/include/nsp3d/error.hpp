// SPDX-License-Identifier: Apache-2.0
//
// nsp3d - 3D radar/cellular channel modelling and null-space projection
// Copyright (C) 2026 The nsp3d authors
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

#ifndef NSP3D_ERROR_HPP
#define NSP3D_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsp3d
{
    // Base class of every error thrown by the library
    class error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Index outside the valid element range
    class bounds_error : public error
    {
    public:
        using error::error;
    };

    // Matrix or vector dimensions do not agree
    class shape_error : public error
    {
    public:
        using error::error;
    };

    // Argument outside the mathematical domain of an operation (negative distance, unsorted input, ...)
    class domain_error : public error
    {
    public:
        using error::error;
    };

    // Decomposition failure or non-finite intermediate result
    class numerical_error : public error
    {
    public:
        using error::error;
    };

    // Reading or writing files failed
    class io_error : public error
    {
    public:
        using error::error;
    };

    // Scenario file problem; carries the offending key and 1-based line (0 if unknown)
    class parse_error : public error
    {
    public:
        parse_error(const std::string &key, std::size_t line, const std::string &what)
            : error("line " + std::to_string(line) + ": '" + key + "': " + what), key_(key), line_(line) {}

        const std::string &key() const noexcept { return key_; }
        std::size_t line() const noexcept { return line_; }

    private:
        std::string key_;
        std::size_t line_;
    };
}

#endif
