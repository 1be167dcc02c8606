// Copyright 2026-present the vfr authors
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

namespace vfr {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad window size, bad threshold...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Cosine geometry on a zero vector has no direction.
class ZeroNorm : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DuplicateId : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class EmptyInput : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Operation is well-formed but cannot be carried out on this input.
class RuntimeFailure : public Error {
public:
    using Error::Error;
};

/// Malformed or unreadable file content. Subclasses separate the integrity failures.
class FormatError : public Error {
public:
    using Error::Error;
};

class BadMagic : public FormatError {
public:
    using FormatError::FormatError;
};

class VersionMismatch : public FormatError {
public:
    using FormatError::FormatError;
};

class TruncatedFile : public FormatError {
public:
    using FormatError::FormatError;
};

class ChecksumMismatch : public FormatError {
public:
    using FormatError::FormatError;
};

/// Could not open, read or write a path.
class IoError : public FormatError {
public:
    using FormatError::FormatError;
};

}  // namespace vfr
