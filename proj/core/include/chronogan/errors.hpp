// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chronogan {

/// Operand shapes do not satisfy an operation's shape rule.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value lies outside an operation's domain, or a result is not finite.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller violated a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input. Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                           std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Binary checkpoint is malformed, truncated, or of an unknown version.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is too degenerate for the requested projection.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training produced a non-finite value. `epoch` is the failing epoch of `phase`.
class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(int phase, long epoch, long last_healthy_epoch, const std::string& cause)
      : std::runtime_error("training diverged in phase " + std::to_string(phase) + " at epoch " +
                           std::to_string(epoch) + ": " + cause),
        phase_(phase),
        epoch_(epoch),
        last_healthy_epoch_(last_healthy_epoch) {}

  int phase() const noexcept { return phase_; }
  long epoch() const noexcept { return epoch_; }
  long last_healthy_epoch() const noexcept { return last_healthy_epoch_; }

 private:
  int phase_;
  long epoch_;
  long last_healthy_epoch_;
};

}  // namespace chronogan
