// Copyright 2026 The hyperghz Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hyperghz {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

/// A qubit address was missing, duplicated, or otherwise invalid.
struct address_error : error {
    explicit address_error(const std::string &msg) : error(msg) {}
};

/// A register or parameter set was malformed at construction time.
struct config_error : error {
    explicit config_error(const std::string &msg) : error(msg) {}
};

/// A numeric contract was violated (non-unitary matrix, bad norm).
struct numeric_error : error {
    explicit numeric_error(const std::string &msg) : error(msg) {}
};

/// An operation was applied to a state outside its supported domain.
struct contract_error : error {
    explicit contract_error(const std::string &msg) : error(msg) {}
};

/// A scalar input was outside its mathematical domain.
struct domain_error : error {
    explicit domain_error(const std::string &msg) : error(msg) {}
};

/// An estimator was asked to run on an empty data set.
struct insufficient_data_error : error {
    explicit insufficient_data_error(const std::string &msg) : error(msg) {}
};

/// A nonlinear fit did not converge; carries diagnostics in the message.
struct fit_error : error {
    explicit fit_error(const std::string &msg) : error(msg) {}
};

/// Noise calibration did not reach its targets; carries best residuals.
struct calibration_error : error {
    calibration_error(const std::string &msg, double residual_population, double residual_coherence)
        : error(msg), population_residual(residual_population), coherence_residual(residual_coherence) {}
    double population_residual;
    double coherence_residual;
};

}  // namespace hyperghz
