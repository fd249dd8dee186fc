#pragma once

#include <string>

#include "germlab/exactalg/rational.hpp"

namespace germlab {

/// Outcome of a decision procedure. UnknownAtDegree means the degree ceiling
/// was reached; Inapplicable means the hypotheses of the test fail.
enum class Status { Yes, No, UnknownAtDegree, Inapplicable };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Yes: return "YES";
    case Status::No: return "NO";
    case Status::UnknownAtDegree: return "UNKNOWN_AT_DEGREE";
    case Status::Inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

/// Input outside the shapes an algorithm handles.
class UnsupportedShape : public StructuralError {
 public:
  explicit UnsupportedShape(const std::string& what) : StructuralError(what) {}
};

}  // namespace germlab
