#ifndef FLOWTROPE_ERROR_HPP_
#define FLOWTROPE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flowtrope {

  enum class ErrorKind {
    InvalidAlphabet,
    AlphabetMismatch,
    EmptyImage,
    BadIndex,
    NotSurjective,
    WindowTooSmall,
    RankMismatch,
    NotPositive,
    NotFolded,
    NotUnimodular,
    NegativeEntry,
    BadDimension,
    DimensionMismatch,
    Overflow,
    LabelSetMismatch,
    NotPrimitive,
    NotEndomorphic,
    NotAperiodic,
    HorizonTooSmall,
    InvalidJunction,
    SyntaxError,
    ValidationError,
  };

  inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::InvalidAlphabet: return "InvalidAlphabet";
      case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
      case ErrorKind::EmptyImage: return "EmptyImage";
      case ErrorKind::BadIndex: return "BadIndex";
      case ErrorKind::NotSurjective: return "NotSurjective";
      case ErrorKind::WindowTooSmall: return "WindowTooSmall";
      case ErrorKind::RankMismatch: return "RankMismatch";
      case ErrorKind::NotPositive: return "NotPositive";
      case ErrorKind::NotFolded: return "NotFolded";
      case ErrorKind::NotUnimodular: return "NotUnimodular";
      case ErrorKind::NegativeEntry: return "NegativeEntry";
      case ErrorKind::BadDimension: return "BadDimension";
      case ErrorKind::DimensionMismatch: return "DimensionMismatch";
      case ErrorKind::Overflow: return "Overflow";
      case ErrorKind::LabelSetMismatch: return "LabelSetMismatch";
      case ErrorKind::NotPrimitive: return "NotPrimitive";
      case ErrorKind::NotEndomorphic: return "NotEndomorphic";
      case ErrorKind::NotAperiodic: return "NotAperiodic";
      case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
      case ErrorKind::InvalidJunction: return "InvalidJunction";
      case ErrorKind::SyntaxError: return "SyntaxError";
      case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
  }

  //! Every failure raised by the library. The kind is stable and meant for
  //! programmatic dispatch; the message is for humans.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          _kind(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  //! A parse failure with a 1-based source position.
  class SyntaxError : public Error {
   public:
    SyntaxError(std::size_t line, std::size_t column, std::string expected)
        : Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", column "
                    + std::to_string(column) + ": expected " + expected),
          _line(line),
          _column(column),
          _expected(std::move(expected)) {}

    [[nodiscard]] std::size_t line() const noexcept {
      return _line;
    }
    [[nodiscard]] std::size_t column() const noexcept {
      return _column;
    }
    [[nodiscard]] std::string const& expected() const noexcept {
      return _expected;
    }

   private:
    std::size_t _line;
    std::size_t _column;
    std::string _expected;
  };

}  // namespace flowtrope

#endif  // FLOWTROPE_ERROR_HPP_
