#include "varnorm/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

namespace varnorm::expr {

namespace {

enum class Arg { number, function, exponent, weight };

struct Signature {
  std::vector<Arg> args;
  /// poly: one or more numbers.
  bool variadic = false;
};

using Table = std::map<std::string, Signature, std::less<>>;

const Table& table(Context ctx) {
  static const Table functions{
      {"chi", {{Arg::number, Arg::number}}},
      {"gauss", {{Arg::number, Arg::number}}},
      {"bump", {{Arg::number, Arg::number}}},
      {"sinw", {{Arg::number}}},
      {"poly", {{Arg::number}, true}},
      {"abspow", {{Arg::function, Arg::number}}},
      {"translate", {{Arg::function, Arg::number}}},
      {"scale", {{Arg::function, Arg::number}}},
      {"dilate", {{Arg::function, Arg::number}}},
      {"sum", {{Arg::function, Arg::function}}},
      {"prod", {{Arg::function, Arg::function}}},
  };
  static const Table exponents{
      {"const", {{Arg::number}}},
      {"loghold", {{Arg::number, Arg::number}}},
      {"clip", {{Arg::function, Arg::number, Arg::number}}},
  };
  static const Table weights{
      {"const", {{Arg::number}}},
      {"powerw", {{Arg::number}}},
      {"expw", {{Arg::number}}},
      {"sum", {{Arg::weight, Arg::weight}}},
      {"prod", {{Arg::weight, Arg::weight}}},
  };
  switch (ctx) {
    case Context::function: return functions;
    case Context::exponent: return exponents;
    case Context::weight: return weights;
  }
  return functions;
}

Context context_of(Arg a) {
  switch (a) {
    case Arg::exponent: return Context::exponent;
    case Arg::weight: return Context::weight;
    default: return Context::function;
  }
}

std::vector<std::string> names(Context ctx) {
  std::vector<std::string> out;
  for (const auto& [name, sig] : table(ctx)) out.push_back(name);
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

bool is_number_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
         c == '+' || c == '-';
}

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  Node document(Context ctx) {
    Node n = term(ctx);
    skip();
    if (i_ != s_.size()) fail({"end of input"});
    return n;
  }

private:
  std::string_view s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::sort(expected.begin(), expected.end());
    std::string found = "end of input";
    if (i_ < s_.size()) {
      std::size_t j = i_;
      while (j < s_.size() && j - i_ < 12 && !std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
      found = "'" + std::string(s_.substr(i_, std::max<std::size_t>(j - i_, 1))) + "'";
    }
    throw ParseError(i_, std::move(expected), found);
  }

  void expect(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return;
    }
    fail({std::string("'") + c + "'"});
  }

  Node number() {
    skip();
    Node n;
    n.pos = i_;
    std::size_t j = i_;
    while (j < s_.size() && is_number_char(s_[j])) ++j;
    std::string_view tok = s_.substr(i_, j - i_);
    // from_chars takes no leading '+'.
    std::string_view body = (!tok.empty() && tok.front() == '+') ? tok.substr(1) : tok;
    if (body.empty() || body.front() == '+') fail({"number"});
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), n.value);
    if (ec != std::errc() || end != body.data() + body.size() || !std::isfinite(n.value))
      fail({"number"});
    i_ = j;
    return n;
  }

  Node term(Context ctx) {
    skip();
    Node n;
    n.pos = i_;
    std::size_t j = i_;
    while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
    const std::string_view word = s_.substr(i_, j - i_);
    const Table& t = table(ctx);
    const auto it = t.find(word);
    if (it == t.end()) fail(names(ctx));
    n.name = std::string(word);
    i_ = j;
    expect('(');
    const Signature& sig = it->second;
    for (std::size_t k = 0;; ++k) {
      const Arg a = sig.variadic ? sig.args.front() : sig.args[k];
      n.args.push_back(a == Arg::number ? number() : term(context_of(a)));
      skip();
      const bool more_allowed = sig.variadic || k + 1 < sig.args.size();
      const bool may_close = sig.variadic || k + 1 == sig.args.size();
      if (i_ < s_.size() && s_[i_] == ',' && more_allowed) {
        ++i_;
        continue;
      }
      if (i_ < s_.size() && s_[i_] == ')' && may_close) {
        ++i_;
        break;
      }
      std::vector<std::string> exp;
      if (more_allowed) exp.push_back("','");
      if (may_close) exp.push_back("')'");
      fail(exp);
    }
    return n;
  }
};

double num(const Node& n, std::size_t k) { return n.args.at(k).value; }

}  // namespace

const char* to_string(Context c) {
  switch (c) {
    case Context::function: return "function";
    case Context::exponent: return "exponent";
    case Context::weight: return "weight";
  }
  return "?";
}

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& found)
    : Error("parse error at position " + std::to_string(position) + ": expected " +
            join(expected) + ", found " + found),
      position_(position),
      expected_(std::move(expected)) {}

Node parse(std::string_view text, Context ctx) { return Parser(text).document(ctx); }

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw DomainError("unprintable number");
  return std::string(buf.data(), end);
}

std::string print(const Node& n) {
  if (n.is_number()) return format_number(n.value);
  std::string out = n.name + "(";
  for (std::size_t k = 0; k < n.args.size(); ++k) {
    if (k) out += ",";
    out += print(n.args[k]);
  }
  return out + ")";
}

RealFunction build_function(const Node& n) {
  const std::string& h = n.name;
  if (h == "chi") return chi(num(n, 0), num(n, 1));
  if (h == "gauss") return gauss(num(n, 0), num(n, 1));
  if (h == "bump") return bump(num(n, 0), num(n, 1));
  if (h == "sinw") return sinw(num(n, 0));
  if (h == "poly") {
    std::vector<double> c;
    for (const Node& a : n.args) c.push_back(a.value);
    return poly(std::move(c));
  }
  if (h == "abspow") return abspow(build_function(n.args.at(0)), num(n, 1));
  if (h == "translate") return translate(build_function(n.args.at(0)), num(n, 1));
  if (h == "scale") return scale(build_function(n.args.at(0)), num(n, 1));
  if (h == "dilate") return dilate(build_function(n.args.at(0)), num(n, 1));
  if (h == "sum") return sum(build_function(n.args.at(0)), build_function(n.args.at(1)));
  if (h == "prod") return prod(build_function(n.args.at(0)), build_function(n.args.at(1)));
  throw DomainError("not a function expression: " + h);
}

ExponentField build_exponent(const Node& n, const Interval& domain) {
  const std::string& h = n.name;
  if (h == "const") return exponent_const(num(n, 0), domain);
  if (h == "loghold") return exponent_loghold(num(n, 0), num(n, 1), domain);
  if (h == "clip") return exponent_clip(build_function(n.args.at(0)), num(n, 1), num(n, 2), domain);
  throw DomainError("not an exponent expression: " + h);
}

WeightField build_weight(const Node& n, const Interval& domain) {
  const std::string& h = n.name;
  if (h == "const") return weight_const(num(n, 0), domain);
  if (h == "powerw") return weight_power(num(n, 0), domain);
  if (h == "expw") return weight_exp(num(n, 0), domain);
  if (h == "sum") return weight_sum(build_weight(n.args.at(0), domain), build_weight(n.args.at(1), domain));
  if (h == "prod") return weight_prod(build_weight(n.args.at(0), domain), build_weight(n.args.at(1), domain));
  throw DomainError("not a weight expression: " + h);
}

RealFunction parse_function(std::string_view text) {
  return build_function(parse(text, Context::function));
}

ExponentField parse_exponent(std::string_view text, const Interval& domain) {
  return build_exponent(parse(text, Context::exponent), domain);
}

WeightField parse_weight(std::string_view text, const Interval& domain) {
  return build_weight(parse(text, Context::weight), domain);
}

}  // namespace varnorm::expr
