#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rrp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyPathError : public Error {
 public:
  EmptyPathError() : Error("path is empty") {}
};

// Step `index` (from node index to index+1) is not an edge of the graph.
class BadEdgeError : public Error {
 public:
  explicit BadEdgeError(std::size_t index)
      : Error("step " + std::to_string(index) + " is not an edge"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class NotStronglyConnectedError : public Error {
 public:
  using Error::Error;
};

// Exponential search refused because the instance exceeds the configured guard.
class InstanceTooLargeError : public Error {
 public:
  InstanceTooLargeError(const std::string& what, std::size_t size, std::size_t limit)
      : Error(what + ": size " + std::to_string(size) + " exceeds limit " + std::to_string(limit)),
        size_(size),
        limit_(limit) {}
  std::size_t size() const { return size_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

class NodeVariantSpecError : public Error {
 public:
  NodeVariantSpecError() : Error("operation requires node-invariant lambda and gamma") {}
};

class ProfileTableExhaustedError : public Error {
 public:
  explicit ProfileTableExhaustedError(std::size_t index)
      : Error("decay profile has no entry at index " + std::to_string(index) + " and no tail rule"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Augmented state enumeration hit the configured cap.
class StateBudgetExceededError : public Error {
 public:
  StateBudgetExceededError(const std::string& what, std::size_t budget)
      : Error(what + " (state budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

class ChoiceNotEdgeError : public Error {
 public:
  using Error::Error;
};

class HorizonMismatchError : public Error {
 public:
  using Error::Error;
};

// No infinite (or long enough) path exists from the start node.
class NoPathError : public Error {
 public:
  using Error::Error;
};

}  // namespace rrp
