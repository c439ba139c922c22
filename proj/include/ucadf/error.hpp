// SPDX-License-Identifier: Apache-2.0
//
// ucadf - direction finding with switched uniform circular arrays
// Copyright (C) 2026 The ucadf authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ucadf {

// Base of every exception thrown by the library. The category decides the
// C API status code and the CLI exit code.
class Error : public std::runtime_error
{
public:
    enum class Category
    {
        config,   // invalid parameters or violated preconditions
        data,     // structurally inconsistent data (shapes, labels, files)
        io,       // file system failures
        numeric   // ill-posed numerical problem
    };

    Error(Category category, const std::string &what) : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

class ConfigError : public Error
{
public:
    explicit ConfigError(const std::string &what) : Error(Category::config, what) {}
};

class DataError : public Error
{
public:
    explicit DataError(const std::string &what) : Error(Category::data, what) {}
};

class IoError : public Error
{
public:
    explicit IoError(const std::string &what) : Error(Category::io, what) {}
};

class NumericError : public Error
{
public:
    explicit NumericError(const std::string &what) : Error(Category::numeric, what) {}
};

} // namespace ucadf
