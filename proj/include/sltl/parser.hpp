#pragma once

#include <stdexcept>
#include <string>

#include "sltl/formula.hpp"

namespace sltl {

struct SpecFile {
  Signature sig;
  Formula init = top();    // boolean only
  Formula safety = top();  // the body psi of G psi
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg);
  int line;
  int col;
  std::string message;
};

// Grammar, weakest binding first: <->, ->, ||, |, &, then the prefix
// operators ! X G[lo,hi] F[lo,hi]. `||` is the strict-future disjunction.
//
//   env p; sys c; env mode : {A, B, C};
//   init: p & !c;
//   safety: G[0,3] c | mode = A;
SpecFile parse_spec(const std::string& text);

// A bare formula over an existing signature, e.g. for tests and tools.
Formula parse_formula(const std::string& text, const Signature& sig);

std::string render(const Formula& f, const Signature& sig);
std::string render_literal(const Literal& l, const Signature& sig);
std::string render_spec(const SpecFile& spec);

}  // namespace sltl
