#pragma once
#include <stdexcept>
#include <string>

namespace dyck {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotABridge : Error {
  explicit NotABridge(const std::string& msg = "path is not a Dyck bridge") : Error(msg) {}
};

struct DuplicateCoordinate : Error {
  explicit DuplicateCoordinate(const std::string& msg = "instance has duplicate coordinates") : Error(msg) {}
};

struct SizeMismatch : Error {
  explicit SizeMismatch(const std::string& msg = "size mismatch") : Error(msg) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& msg = "index out of range") : Error(msg) {}
};

struct TooLarge : Error {
  explicit TooLarge(const std::string& msg = "input exceeds supported size") : Error(msg) {}
};

struct UnsupportedOrder : Error {
  explicit UnsupportedOrder(const std::string& msg = "moment order not supported") : Error(msg) {}
};

struct QuadratureNonConvergence : Error {
  explicit QuadratureNonConvergence(const std::string& msg = "quadrature failed to converge") : Error(msg) {}
};

}  // namespace dyck
