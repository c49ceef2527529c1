#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcr/formula.hpp"

namespace lcr {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, SourceSpan span)
      : std::runtime_error(msg + " at " + std::to_string(span.start) + ".." +
                           std::to_string(span.end)),
        span_(span) {}
  SourceSpan span() const { return span_; }

private:
  SourceSpan span_;
};

// Concrete syntax, loosest binding first:
//   =>   conditional     non-associative
//   <->  biconditional   non-associative
//   ->   implication     right-associative
//   |    lattice join    left
//   &    lattice meet    left
//   (+)  strong sum      left
//   (*)  strong product  left
//   (-)  bounded minus   left
//   ~    negation        prefix
//   atoms: identifiers [a-z][a-zA-Z0-9_]*, T, F, J{k/d}(f), I{k/d}(f), (f)
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(print(f)) == f.
std::string print(const Formula& f);

/// One formula per non-blank line; '#' starts a comment.
std::vector<Formula> parse_corpus(std::string_view text);

} // namespace lcr
