#pragma once

#include <iosfwd>

#include "amal/infer.hpp"
#include "amal/verifier.hpp"

namespace amal {

/// Syntax or type error in a session program, with 1-based position.
struct parse_error : input_error {
  int line, col;
  parse_error(const std::string& what, int line_, int col_)
      : input_error(what + " (line " + std::to_string(line_) + ", column " +
                    std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

/// Expression AST. Integer literals double as constant polynomials; a
/// polynomial literal is a +-joined list of c*X^k terms.
struct Expr {
  enum class Kind { Call, Name, Number, PolyLit, List };
  Kind kind = Kind::Name;
  std::string head;                          // call head / bound name
  std::vector<Expr> args;                    // Call and List
  long number = 0;                           // Number
  std::vector<std::pair<long, int>> terms;   // PolyLit: (coeff, exponent)
  int line = 1, col = 1;

  std::string str() const;
};

struct Stmt {
  enum class Kind { Let, Command } kind = Kind::Command;
  std::string name;        // let target, or the command word
  Expr expr;               // let right-hand side
  std::vector<Expr> args;  // command arguments (names, exprs, flags)

  std::string str() const;
};

using Program = std::vector<Stmt>;

Program parse_program(const std::string& source);
std::string print_program(const Program& prog);

struct CliOptions {
  bool structured = false;   // --format structured
  bool assert_mode = false;  // --assert: a false check fails the run
  int jobs = 0;
  int degree = 3;            // Gaussian direct check degree bound
  long samples = 5000;       // Gaussian direct check sample budget
  unsigned long long seed = 0;
  int search_max_size = 1200;  // default --max-size for search
  std::string kb_path;         // empty = shipped knowledge base
};

/// Sequential evaluator with a named environment. Returns the process exit
/// code: 0 = everything verified/true, 1 = falsification or failed assert,
/// 2 = input error, 3 = resource cap.
int run_program(const std::string& source, const CliOptions& opts,
                std::ostream& out, std::ostream& err);

}  // namespace amal
