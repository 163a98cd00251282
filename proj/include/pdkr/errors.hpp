#ifndef PDKR_ERRORS_HPP_
#define PDKR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pdkr {

  // Input outside an operation's domain (b < 3, cell 7, |P| < 2 for tiles).
  class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
  };

  // Malformed user text: rationals, state literals, words, cell lists.
  class ParseError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  enum class Limit { elements, memory, wall_clock };

  inline char const* to_string(Limit l) {
    switch (l) {
      case Limit::elements:
        return "elements";
      case Limit::memory:
        return "memory";
      case Limit::wall_clock:
        return "wall_clock";
    }
    return "unknown";
  }

  // A computation ran past its configured budget.
  class ResourceError : public std::runtime_error {
   public:
    ResourceError(Limit limit, std::string const& what, std::size_t reached)
        : std::runtime_error(what), _limit(limit), _reached(reached) {}

    Limit limit() const noexcept {
      return _limit;
    }
    // Number of elements (or sets) enumerated when the limit tripped.
    std::size_t reached() const noexcept {
      return _reached;
    }
    // Pipeline phase that was running ("closure", "skeleton", ...), if known.
    std::string const& phase() const noexcept {
      return _phase;
    }
    void set_phase(std::string phase) {
      _phase = std::move(phase);
    }

   private:
    Limit       _limit;
    std::size_t _reached;
    std::string _phase;
  };

  // An internal consistency check failed; always a bug.
  class InvariantError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

}  // namespace pdkr

#endif  // PDKR_ERRORS_HPP_
