// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace parapath {

enum class ErrorCode {
    CycleDetected,
    DimensionMismatch,
    UnreachableTarget,
    DanglingEdge,
    InvalidWeight,
    InvalidPath,
    NonAffineWeight,
    NoFeasiblePath,
    TooManyPaths,
    EmptySet,
    NonPositiveElement,
    ZeroLiquidation,
    ShapeViolation,
    InvalidArgument,
    ParseError,
};

inline const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnreachableTarget: return "UnreachableTarget";
        case ErrorCode::DanglingEdge: return "DanglingEdge";
        case ErrorCode::InvalidWeight: return "InvalidWeight";
        case ErrorCode::InvalidPath: return "InvalidPath";
        case ErrorCode::NonAffineWeight: return "NonAffineWeight";
        case ErrorCode::NoFeasiblePath: return "NoFeasiblePath";
        case ErrorCode::TooManyPaths: return "TooManyPaths";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::NonPositiveElement: return "NonPositiveElement";
        case ErrorCode::ZeroLiquidation: return "ZeroLiquidation";
        case ErrorCode::ShapeViolation: return "ShapeViolation";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// All library failures are reported through this type; the message names
// the offending entity (edge id, vertex, field, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace parapath
