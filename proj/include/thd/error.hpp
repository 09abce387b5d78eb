#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thd {

enum class ErrorCode {
  DuplicateEdgeId,
  InvalidInterval,
  TooFewParticipants,
  DuplicateParticipant,
  InvalidId,
  TickOutOfRange,
  UnknownVertex,
  NonPositiveMaxHops,
  Unreached,
  PlanInvalid,
  CheckpointMismatch,
  CorruptCheckpoint,
  ParamsInvalid,
  MalformedJson,
  MixedTimeEncodings,
  RecordInvalid,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A single input record failed validation. `index` is the zero-based
/// position of the record in the input sequence.
class RecordError : public Error {
 public:
  RecordError(std::size_t index, const std::string& reason,
              ErrorCode code = ErrorCode::RecordInvalid);

  std::size_t index() const noexcept { return index_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t index_;
  std::string reason_;
};

}  // namespace thd
