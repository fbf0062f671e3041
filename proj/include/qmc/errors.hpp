// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

/// Bad user-facing configuration: malformed input files, missing or
/// inconsistent sampler parameters. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qmc
