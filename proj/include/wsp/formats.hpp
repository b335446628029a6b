#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsp/error.hpp"
#include "wsp/instances.hpp"
#include "wsp/model.hpp"

namespace wsp {

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r') {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

// '#' starts a comment; ':' ';' '(' ')' '=' are tokens of their own.
inline std::vector<std::string> tokenize(const std::string& line) {
  std::string padded;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ':' || ch == ';' || ch == '(' || ch == ')' || ch == '=') {
      padded.push_back(' ');
      padded.push_back(ch);
      padded.push_back(' ');
    } else {
      padded.push_back(ch);
    }
  }
  std::istringstream in(padded);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

inline int parse_int(const std::string& token, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    fail(Errc::parse_error,
         std::string("expected an integer for ") + what + ", got '" + token + "'");
  return value;
}

struct TokenCursor {
  const std::vector<std::string>& tokens;
  std::size_t pos = 0;

  bool done() const { return pos >= tokens.size(); }
  bool peek_is(std::string_view s) const { return !done() && tokens[pos] == s; }

  const std::string& take(const char* what) {
    if (done()) fail(Errc::parse_error, std::string("line ends where ") + what + " was expected");
    return tokens[pos++];
  }

  int take_int(const char* what) { return parse_int(take(what), what); }

  void expect(std::string_view symbol) {
    const auto& tok = take("a separator");
    if (tok != symbol)
      fail(Errc::parse_error, "expected '" + std::string(symbol) + "', got '" + tok + "'");
  }

  void expect_end() {
    if (!done()) fail(Errc::parse_error, "trailing tokens starting at '" + tokens[pos] + "'");
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

inline CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula f;
  bool header_seen = false;
  int declared_clauses = 0;
  std::vector<int> current;

  for (const auto& line : detail::split_lines(text)) {
    std::istringstream in(line);
    std::string first;
    if (!(in >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;  // comment

    if (!header_seen) {
      std::string kind;
      if (first != "p" || !(in >> kind) || kind != "cnf")
        fail(Errc::parse_error, "malformed-header: expected 'p cnf <vars> <clauses>'");
      std::string vars_tok, clauses_tok, extra;
      if (!(in >> vars_tok >> clauses_tok) || (in >> extra))
        fail(Errc::parse_error, "malformed-header: expected 'p cnf <vars> <clauses>'");
      f.var_count = detail::parse_int(vars_tok, "the variable count");
      declared_clauses = detail::parse_int(clauses_tok, "the clause count");
      if (f.var_count < 0 || declared_clauses < 0)
        fail(Errc::parse_error, "malformed-header: negative counts");
      header_seen = true;
      continue;
    }

    std::string token = first;
    do {
      const int literal = detail::parse_int(token, "a literal");
      if (literal == 0) {
        if (current.empty()) fail(Errc::parse_error, "empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::abs(literal) > f.var_count)
          fail(Errc::parse_error, "literal-out-of-range: " + std::to_string(literal));
        current.push_back(literal);
      }
    } while (in >> token);
  }

  if (!header_seen) fail(Errc::parse_error, "malformed-header: no 'p cnf' line");
  if (!current.empty()) fail(Errc::parse_error, "unterminated-clause at end of input");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    fail(Errc::parse_error, "clause count mismatch: header declares " +
                                std::to_string(declared_clauses) + ", found " +
                                std::to_string(f.clauses.size()));
  for (auto& clause : f.clauses)
    f.arity_cap = std::max(f.arity_cap, static_cast<int>(clause.size()));
  validate_cnf(f);
  return f;
}

inline std::string serialize_dimacs(const CnfFormula& f) {
  validate_cnf(f);
  std::ostringstream out;
  out << "p cnf " << f.var_count << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    auto sorted = clause;
    std::sort(sorted.begin(), sorted.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    for (int literal : sorted) out << literal << ' ';
    out << "0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Workflow files
//
//   wsp <steps> <users> <constraints>
//   auth <step> : <users...>
//   ne <a> <b>
//   count <lo> <hi> : <steps...>
//   fa (<a> <b>) (<c> <d>) ...
//   table <scope...> : <row> ; <row> ; ...
// ---------------------------------------------------------------------------

inline Workflow parse_workflow(const std::string& text) {
  Workflow w;
  bool header_seen = false;
  int declared_constraints = 0;
  std::vector<char> auth_seen;

  for (const auto& line : detail::split_lines(text)) {
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    detail::TokenCursor cur{tokens};

    if (!header_seen) {
      if (cur.take("the header keyword") != "wsp")
        fail(Errc::parse_error, "malformed-header: expected 'wsp <steps> <users> <constraints>'");
      w.step_count = cur.take_int("the step count");
      w.user_count = cur.take_int("the user count");
      declared_constraints = cur.take_int("the constraint count");
      cur.expect_end();
      if (w.step_count < 0 || w.user_count < 0 || declared_constraints < 0)
        fail(Errc::parse_error, "malformed-header: negative counts");
      w.auth.assign(static_cast<std::size_t>(w.step_count), {});
      auth_seen.assign(static_cast<std::size_t>(w.step_count), 0);
      header_seen = true;
      continue;
    }

    const std::string& keyword = tokens[0];
    cur.pos = 1;
    if (keyword == "auth") {
      const int step = cur.take_int("the step");
      cur.expect(":");
      if (step < 1 || step > w.step_count)
        fail(Errc::parse_error, "auth line for unknown step " + std::to_string(step));
      if (auth_seen[static_cast<std::size_t>(step) - 1])
        fail(Errc::parse_error, "duplicate auth line for step " + std::to_string(step));
      auth_seen[static_cast<std::size_t>(step) - 1] = 1;
      std::vector<UserId> users;
      while (!cur.done()) users.push_back(cur.take_int("a user"));
      std::sort(users.begin(), users.end());
      if (std::adjacent_find(users.begin(), users.end()) != users.end())
        fail(Errc::parse_error, "duplicate user in auth line for step " + std::to_string(step));
      w.auth[static_cast<std::size_t>(step) - 1] = std::move(users);
    } else if (keyword == "ne") {
      const int a = cur.take_int("a step");
      const int b = cur.take_int("a step");
      cur.expect_end();
      w.constraints.push_back(not_equals(a, b));
    } else if (keyword == "count") {
      const int lo = cur.take_int("the lower bound");
      const int hi = cur.take_int("the upper bound");
      cur.expect(":");
      std::vector<StepId> scope;
      while (!cur.done()) scope.push_back(cur.take_int("a step"));
      w.constraints.push_back(counting(lo, hi, std::move(scope)));
    } else if (keyword == "fa") {
      std::vector<std::pair<StepId, StepId>> pairs;
      while (!cur.done()) {
        cur.expect("(");
        const int a = cur.take_int("a step");
        const int b = cur.take_int("a step");
        cur.expect(")");
        pairs.emplace_back(a, b);
      }
      w.constraints.push_back(forbidden_agreement(std::move(pairs)));
    } else if (keyword == "table") {
      std::vector<StepId> scope;
      while (!cur.peek_is(":")) scope.push_back(cur.take_int("a step"));
      cur.expect(":");
      std::vector<std::vector<UserId>> rows;
      if (!cur.done()) {  // ';'-separated rows; an empty tail segment is a malformed row
        std::vector<UserId> row;
        while (!cur.done()) {
          if (cur.peek_is(";")) {
            cur.expect(";");
            rows.push_back(std::move(row));
            row.clear();
          } else {
            row.push_back(cur.take_int("a user"));
          }
        }
        rows.push_back(std::move(row));
      }
      w.constraints.push_back(explicit_table(std::move(scope), std::move(rows)));
    } else {
      fail(Errc::parse_error, "unknown-kind: '" + keyword + "'");
    }
  }

  if (!header_seen) fail(Errc::parse_error, "malformed-header: no 'wsp' line");
  for (int s = 1; s <= w.step_count; ++s)
    if (!auth_seen[static_cast<std::size_t>(s) - 1])
      fail(Errc::parse_error, "missing auth line for step " + std::to_string(s));
  if (static_cast<int>(w.constraints.size()) != declared_constraints)
    fail(Errc::parse_error, "constraint count mismatch: header declares " +
                                std::to_string(declared_constraints) + ", found " +
                                std::to_string(w.constraints.size()));
  validate_workflow(w);
  return w;
}

inline std::string serialize_workflow(const Workflow& w) {
  validate_workflow(w);
  std::ostringstream out;
  out << "wsp " << w.step_count << ' ' << w.user_count << ' ' << w.constraints.size() << '\n';
  for (int s = 1; s <= w.step_count; ++s) {
    out << "auth " << s << ':';
    for (UserId u : w.auth[static_cast<std::size_t>(s) - 1]) out << ' ' << u;
    out << '\n';
  }
  for (const auto& c : w.constraints) {
    std::visit(
        [&](const auto& kind) {
          using T = std::decay_t<decltype(kind)>;
          if constexpr (std::is_same_v<T, NotEquals>) {
            out << "ne " << kind.a << ' ' << kind.b;
          } else if constexpr (std::is_same_v<T, Counting>) {
            out << "count " << kind.min_per_user << ' ' << kind.max_per_user << " :";
            for (StepId s : kind.scope) out << ' ' << s;
          } else if constexpr (std::is_same_v<T, ForbiddenAgreement>) {
            out << "fa";
            for (const auto& [a, b] : kind.pairs) out << " (" << a << ' ' << b << ')';
          } else {
            out << "table";
            for (StepId s : kind.scope) out << ' ' << s;
            out << " :";
            for (std::size_t i = 0; i < kind.rows.size(); ++i) {
              if (i > 0) out << " ;";
              for (UserId u : kind.rows[i]) out << ' ' << u;
            }
          }
        },
        c);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CSP files
//
//   csp <vars> <domain> <constraints> [<arity>]
//   forbid <var>=<value> <var>=<value> ...
//
// The arity field is optional on parse (defaulting to the largest constraint
// arity) and always written, so the cap survives a round trip.
// ---------------------------------------------------------------------------

inline CspInstance parse_csp(const std::string& text) {
  CspInstance csp;
  bool header_seen = false;
  bool arity_declared = false;
  int declared_constraints = 0;

  for (const auto& line : detail::split_lines(text)) {
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    detail::TokenCursor cur{tokens};

    if (!header_seen) {
      if (cur.take("the header keyword") != "csp")
        fail(Errc::parse_error, "malformed-header: expected 'csp <vars> <domain> <constraints>'");
      csp.var_count = cur.take_int("the variable count");
      csp.domain_size = cur.take_int("the domain size");
      declared_constraints = cur.take_int("the constraint count");
      if (!cur.done()) {
        csp.arity_cap = cur.take_int("the arity cap");
        arity_declared = true;
      }
      cur.expect_end();
      header_seen = true;
      continue;
    }

    if (tokens[0] != "forbid") fail(Errc::parse_error, "unknown-kind: '" + tokens[0] + "'");
    cur.pos = 1;
    std::vector<std::pair<int, int>> terms;
    while (!cur.done()) {
      const int var = cur.take_int("a variable");
      cur.expect("=");
      const int value = cur.take_int("a value");
      terms.emplace_back(var, value);
    }
    csp.constraints.push_back(csp_constraint(std::move(terms)));
  }

  if (!header_seen) fail(Errc::parse_error, "malformed-header: no 'csp' line");
  if (static_cast<int>(csp.constraints.size()) != declared_constraints)
    fail(Errc::parse_error, "constraint count mismatch: header declares " +
                                std::to_string(declared_constraints) + ", found " +
                                std::to_string(csp.constraints.size()));
  if (!arity_declared)
    for (const auto& c : csp.constraints)
      csp.arity_cap = std::max(csp.arity_cap, static_cast<int>(c.terms.size()));
  validate_csp(csp);
  return csp;
}

inline std::string serialize_csp(const CspInstance& csp) {
  validate_csp(csp);
  std::ostringstream out;
  out << "csp " << csp.var_count << ' ' << csp.domain_size << ' ' << csp.constraints.size() << ' '
      << csp.arity_cap << '\n';
  for (const auto& c : csp.constraints) {
    out << "forbid";
    for (const auto& [var, value] : c.terms) out << ' ' << var << '=' << value;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Set Splitting files
//
//   ss <elements> <subsets>
//   elems <name> <name> ...      (optional; inferred from the sets if absent)
//   set <name> <name> ...
// ---------------------------------------------------------------------------

inline SetSplittingInstance parse_setsplit(const std::string& text) {
  SetSplittingInstance inst;
  bool header_seen = false;
  bool elems_declared = false;
  int declared_size = 0;
  int declared_subsets = 0;

  auto element_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < inst.element_names.size(); ++i)
      if (inst.element_names[i] == name) return static_cast<int>(i) + 1;
    return 0;
  };

  for (const auto& line : detail::split_lines(text)) {
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    detail::TokenCursor cur{tokens};

    if (!header_seen) {
      if (cur.take("the header keyword") != "ss")
        fail(Errc::parse_error, "malformed-header: expected 'ss <elements> <subsets>'");
      declared_size = cur.take_int("the ground set size");
      declared_subsets = cur.take_int("the subset count");
      cur.expect_end();
      if (declared_size < 0 || declared_subsets < 0)
        fail(Errc::parse_error, "malformed-header: negative counts");
      header_seen = true;
      continue;
    }

    if (tokens[0] == "elems") {
      if (elems_declared || !inst.element_names.empty())
        fail(Errc::parse_error, "elems line must come first and appear once");
      cur.pos = 1;
      while (!cur.done()) {
        const auto& name = cur.take("an element name");
        if (element_index(name) != 0)
          fail(Errc::parse_error, "duplicate element name '" + name + "'");
        inst.element_names.push_back(name);
      }
      if (static_cast<int>(inst.element_names.size()) != declared_size)
        fail(Errc::parse_error, "elems line size differs from the declared ground set size");
      elems_declared = true;
    } else if (tokens[0] == "set") {
      cur.pos = 1;
      std::vector<int> subset;
      while (!cur.done()) {
        const auto& name = cur.take("an element name");
        int index = element_index(name);
        if (index == 0) {
          if (elems_declared)
            fail(Errc::parse_error, "unknown element '" + name + "'");
          inst.element_names.push_back(name);
          index = static_cast<int>(inst.element_names.size());
        }
        subset.push_back(index);
      }
      if (subset.empty()) fail(Errc::parse_error, "empty-subset");
      std::sort(subset.begin(), subset.end());
      if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        fail(Errc::parse_error, "subset lists an element twice");
      inst.family.push_back(std::move(subset));
    } else {
      fail(Errc::parse_error, "unknown-kind: '" + tokens[0] + "'");
    }
  }

  if (!header_seen) fail(Errc::parse_error, "malformed-header: no 'ss' line");
  if (static_cast<int>(inst.element_names.size()) != declared_size)
    fail(Errc::parse_error, "ground set size mismatch: declared " + std::to_string(declared_size) +
                                ", found " + std::to_string(inst.element_names.size()));
  if (static_cast<int>(inst.family.size()) != declared_subsets)
    fail(Errc::parse_error, "subset count mismatch: declared " + std::to_string(declared_subsets) +
                                ", found " + std::to_string(inst.family.size()));
  validate_setsplit(inst);
  return inst;
}

inline std::string serialize_setsplit(const SetSplittingInstance& inst) {
  validate_setsplit(inst);
  std::ostringstream out;
  out << "ss " << inst.element_names.size() << ' ' << inst.family.size() << '\n';
  out << "elems";
  for (const auto& name : inst.element_names) out << ' ' << name;
  out << '\n';
  for (const auto& subset : inst.family) {
    out << "set";
    for (int e : subset) out << ' ' << inst.element_names[static_cast<std::size_t>(e) - 1];
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Format detection and provenance metadata
// ---------------------------------------------------------------------------

enum class InstanceKind { cnf, csp, workflow, setsplit };

inline InstanceKind sniff_format(const std::string& text) {
  for (const auto& line : detail::split_lines(text)) {
    std::istringstream in(line);
    std::string first;
    if (!(in >> first)) continue;
    if (first[0] == '#') continue;
    if (first == "wsp") return InstanceKind::workflow;
    if (first == "csp") return InstanceKind::csp;
    if (first == "ss") return InstanceKind::setsplit;
    if (first == "p" || first == "c" || first[0] == 'c') return InstanceKind::cnf;
    fail(Errc::parse_error, "unrecognized format (first keyword '" + first + "')");
  }
  fail(Errc::parse_error, "empty input");
}

// Leading "# key: value" (or "c key: value") comment lines.
inline std::vector<std::pair<std::string, std::string>> parse_metadata(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> meta;
  for (const auto& line : detail::split_lines(text)) {
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;
    if (trimmed[0] != '#' && !(trimmed.size() >= 2 && trimmed[0] == 'c' && trimmed[1] == ' '))
      break;
    const std::size_t start = trimmed[0] == '#' ? 1 : 2;
    const std::size_t colon = trimmed.find(':', start);
    if (colon == std::string::npos) continue;
    std::string key = trimmed.substr(start, colon - start);
    std::string value = trimmed.substr(colon + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t") + 1);
    if (!key.empty()) meta.emplace_back(std::move(key), std::move(value));
  }
  return meta;
}

inline std::string metadata_block(const std::vector<std::pair<std::string, std::string>>& meta,
                                  char comment_marker = '#') {
  std::ostringstream out;
  for (const auto& [key, value] : meta)
    out << comment_marker << ' ' << key << ": " << value << '\n';
  return out.str();
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

inline std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace wsp
