// Copyright 2026 The qrff Authors
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

namespace qrff {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A malformed domain object: bad qubit index, duplicate targets, ...
class InvalidSpec : public Error {
  public:
    using Error::Error;
};

/// A matrix expected to be Hermitian is not, within tolerance.
class NotHermitian : public Error {
  public:
    using Error::Error;
};

/// Vector/matrix dimensions do not match.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// Enumerating the frequency spectrum would exceed the configured cap.
class SpectrumTooLarge : public Error {
  public:
    using Error::Error;
};

/// Sampling without replacement asked for more elements than exist.
class InsufficientPopulation : public Error {
  public:
    using Error::Error;
};

/// A linear system could not be factorized (singular at zero ridge).
class SingularSystem : public Error {
  public:
    using Error::Error;
};

/// Training produced a non-finite loss.
class DivergedTraining : public Error {
  public:
    using Error::Error;
};

/// Too few grid points to resolve the model's largest frequency.
class ShannonViolation : public Error {
  public:
    using Error::Error;
};

/// Grid step too coarse for the requested approximation error.
class StepTooCoarse : public Error {
  public:
    using Error::Error;
};

/// Malformed input file; the message carries row/column context.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Not enough data points for a statistic to be meaningful.
class InsufficientData : public Error {
  public:
    using Error::Error;
};

}  // namespace qrff
