#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cardinal {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ShadowingError : public Error { using Error::Error; };
class FreeVariableError : public Error { using Error::Error; };
class ArityError : public Error { using Error::Error; };
class CaptureError : public Error { using Error::Error; };
class FormatError : public Error { using Error::Error; };
class DomainMismatch : public Error { using Error::Error; };
class UnknownConstant : public Error { using Error::Error; };
class UnknownSection : public Error { using Error::Error; };
class UnknownPredicate : public Error { using Error::Error; };
class ScaleError : public Error { using Error::Error; };
class LexiconError : public Error { using Error::Error; };
class ScenarioError : public Error { using Error::Error; };
class DuplicateConstant : public ScenarioError { using ScenarioError::ScenarioError; };
class NoRobot : public ScenarioError { using ScenarioError::ScenarioError; };
class UnknownType : public ScenarioError { using ScenarioError::ScenarioError; };
class UnknownLocation : public ScenarioError { using ScenarioError::ScenarioError; };
class UnknownObject : public Error { using Error::Error; };
class PreconditionFailed : public Error { using Error::Error; };
class OracleScaleError : public Error { using Error::Error; };
class MissingScope : public Error { using Error::Error; };
class UnknownQuantifier : public Error { using Error::Error; };

class Insufficient : public Error {
 public:
  Insufficient(std::size_t have, std::size_t need)
      : Error("need " + std::to_string(need) + " objects, have " + std::to_string(have)), have_(have), need_(need) {}
  std::size_t have() const noexcept { return have_; }
  std::size_t need() const noexcept { return need_; }

 private:
  std::size_t have_;
  std::size_t need_;
};

class InconsistentWorld : public Error {
 public:
  InconsistentWorld(std::string rule, std::string elements)
      : Error("distinction rule '" + rule + "' violated by " + elements),
        rule_(std::move(rule)), elements_(std::move(elements)) {}
  const std::string& rule() const noexcept { return rule_; }
  const std::string& elements() const noexcept { return elements_; }

 private:
  std::string rule_;
  std::string elements_;
};

}  // namespace cardinal
