#pragma once

#include <stdexcept>
#include <string>

namespace utm {

// Validation errors are caller mistakes (bad input, bad geometry); numerical
// errors mean a correct request could not be carried out to tolerance.
enum class ErrorKind { Validation, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(name) {}
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define UTM_DEFINE_ERROR(Name, Kind)                       \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& what)                 \
        : Error(ErrorKind::Kind, #Name, what) {}           \
  };

UTM_DEFINE_ERROR(InvalidArgument, Validation)
UTM_DEFINE_ERROR(PointNotInterior, Validation)
UTM_DEFINE_ERROR(NotInTrapezoid, Validation)
UTM_DEFINE_ERROR(DegenerateArc, Validation)
UTM_DEFINE_ERROR(SingularPoint, Validation)
UTM_DEFINE_ERROR(ArgumentOutOfSector, Validation)
UTM_DEFINE_ERROR(ZeroSpectralParameter, Validation)
UTM_DEFINE_ERROR(OracleDomain, Validation)
UTM_DEFINE_ERROR(NoConvergence, Numerical)
UTM_DEFINE_ERROR(NonDecayingIntegrand, Numerical)
UTM_DEFINE_ERROR(EndpointNotDecaying, Numerical)
UTM_DEFINE_ERROR(DecayCheckFailed, Numerical)
UTM_DEFINE_ERROR(RankDeficient, Numerical)
UTM_DEFINE_ERROR(IoError, Numerical)

#undef UTM_DEFINE_ERROR

}  // namespace utm
