#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gvf {

// Error taxonomy shared by all modules; the CLI maps codes to exit statuses.
enum class Err {
  Syntax,                    // bad surface syntax (carries a byte offset)
  Constant,                  // numeric literal in an illegal tropical-term position
  ArityMismatch,             // evaluation vector shorter than the term arity
  ZeroElement,               // operation demanded a nonzero field element
  NotSquarefree,             // repeated factor where a squarefree situation is required
  PrecisionExhausted,        // certification/decision failed at the precision cap
  UnsupportedRamification,   // general number field at a prime dividing disc(min_poly)
  NotConjugate,              // Galois-invariance check given a non-conjugate tuple
  PointOnSupport,            // point lies on the divisor support (f_i zero/undefined)
  MissingGenerator2,         // feasibility normalization needs 2 among the generators
  ToleranceTooTight,         // eps below the log-approximation perturbation bound
  Unbounded,                 // LP objective unbounded on the sampled cone
  NoCandidate,               // search: every candidate filtered out
  Input,                     // malformed input (bad JSON, bad field descriptor, ...)
  Internal
};

class GvfError : public std::runtime_error {
 public:
  GvfError(Err code, const std::string& msg, std::size_t byte_offset = npos)
      : std::runtime_error(msg), code_(code), offset_(byte_offset) {}
  Err code() const { return code_; }
  std::size_t byte_offset() const { return offset_; }
  bool has_offset() const { return offset_ != npos; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Err code_;
  std::size_t offset_;
};

const char* err_name(Err code);

}  // namespace gvf
