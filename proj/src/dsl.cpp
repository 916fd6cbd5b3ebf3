#include "markov_fuzzy/dsl.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>

#include <json.hpp>

#include "markov_fuzzy/error.hpp"

namespace markov_fuzzy {

namespace {

enum class Tok { Ident, Exists, Forall, In, Colon, LParen, RParen, Not, And, Or, Arrow, End };

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Exists: return "'exists'";
    case Tok::Forall: return "'forall'";
    case Tok::In: return "'in'";
    case Tok::Colon: return "':'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  SourceSpan span;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_body = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_start(c)) {
      while (i < s.size() && is_body(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "exists") kind = Tok::Exists;
      else if (word == "forall") kind = Tok::Forall;
      else if (word == "in") kind = Tok::In;
      out.push_back({kind, {start, i}, std::move(word)});
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      i += 2;
      out.push_back({Tok::Arrow, {start, i}, "->"});
      continue;
    }
    Tok kind;
    switch (c) {
      case ':': kind = Tok::Colon; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '!': kind = Tok::Not; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      default: {
        std::size_t end = start + 1;
        // Keep multi-byte UTF-8 sequences whole in the reported span.
        while (end < s.size() && (static_cast<unsigned char>(s[end]) & 0xC0) == 0x80) ++end;
        throw ParseError("unexpected character '" + std::string(s.substr(start, end - start)) +
                             "' at offset " + std::to_string(start),
                         {start, end},
                         {"identifier", "'!'", "'('", "')'", "'&'", "'|'", "'->'", "':'"});
      }
    }
    ++i;
    out.push_back({kind, {start, i}, std::string(1, c)});
  }
  out.push_back({Tok::End, {s.size(), s.size()}, ""});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Formula parse() {
    Formula f = formula();
    expect_one_of({Tok::End}, {Tok::And, Tok::Or, Tok::Arrow, Tok::End});
    return f;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    const Token& t = peek();
    std::vector<std::string> names;
    std::string list;
    for (Tok e : expected) {
      names.push_back(describe(e));
      if (!list.empty()) list += ", ";
      list += describe(e);
    }
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + list + " but found " + found + " at offset " +
                         std::to_string(t.span.start),
                     t.span, std::move(names));
  }

  // Consumes a token of kind `kind`; on mismatch reports `expected`.
  const Token& expect_one_of(std::initializer_list<Tok> kind, std::initializer_list<Tok> expected) {
    for (Tok k : kind) {
      if (peek().kind == k) return advance();
    }
    fail(expected);
  }

  Formula formula() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quantified();
    return implication();
  }

  Formula quantified() {
    const Quantifier q = advance().kind == Tok::Exists ? Quantifier::Exists : Quantifier::Forall;
    std::string variable = expect_one_of({Tok::Ident}, {Tok::Ident}).text;
    expect_one_of({Tok::In}, {Tok::In});
    std::string universe = expect_one_of({Tok::Ident}, {Tok::Ident}).text;
    expect_one_of({Tok::Colon}, {Tok::Colon});
    return Formula::quantified(q, std::move(variable), std::move(universe), formula());
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      advance();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Or) {
      advance();
      lhs = Formula::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (peek().kind == Tok::And) {
      advance();
      lhs = Formula::conj(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not:
        advance();
        return Formula::negate(unary());
      case Tok::LParen: {
        advance();
        Formula inner = formula();
        expect_one_of({Tok::RParen}, {Tok::RParen, Tok::And, Tok::Or, Tok::Arrow});
        return inner;
      }
      case Tok::Ident: {
        std::string name = advance().text;
        if (peek().kind == Tok::LParen) {
          advance();
          std::string argument = expect_one_of({Tok::Ident}, {Tok::Ident}).text;
          expect_one_of({Tok::RParen}, {Tok::RParen});
          return Formula::apply(std::move(name), std::move(argument));
        }
        return Formula::atom(std::move(name));
      }
      default:
        fail({Tok::Not, Tok::LParen, Tok::Ident});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct Scope {
  std::string variable;
  std::optional<std::string> family;
};

void check(const Formula& f, std::vector<Scope>& scopes) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Var>) {
          for (Scope& s : scopes) {
            if (!node.argument && node.name == s.variable) {
              throw Error(ErrorCode::InvalidQuantifier,
                          "bound variable '" + node.name + "' used as a proposition");
            }
            if (node.argument && *node.argument == s.variable) {
              if (s.family && *s.family != node.name) {
                throw Error(ErrorCode::InvalidQuantifier,
                            "variable '" + s.variable + "' is applied to both '" + *s.family +
                                "' and '" + node.name + "'; one belief family per variable");
              }
              s.family = node.name;
            }
          }
        } else if constexpr (std::is_same_v<T, Not>) {
          check(node.operand, scopes);
        } else if constexpr (std::is_same_v<T, Binary>) {
          check(node.lhs, scopes);
          check(node.rhs, scopes);
        } else {
          for (const Scope& s : scopes) {
            if (s.variable == node.variable) {
              throw Error(ErrorCode::InvalidQuantifier,
                          "nested quantifiers over the same variable '" + node.variable + "'");
            }
          }
          scopes.push_back({node.variable, std::nullopt});
          check(node.body, scopes);
          scopes.pop_back();
        }
      },
      static_cast<const std::variant<Var, Not, Binary, Quantified>&>(f.node()));
}

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::SchemaError, message);
}

Belief belief_field(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where + " must be a number");
  const double d = v.get<double>();
  if (!(d >= 0.0 && d <= 1.0)) schema_error(where + " = " + v.dump() + " is outside [0, 1]");
  return Belief(d);
}

void only_keys(const json& doc, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : doc.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) schema_error("unexpected key '" + key + "'");
  }
}

std::pair<std::string, std::string> split_pair_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
    schema_error("pair key '" + key + "' must have the form \"a,b\"");
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  return {trim(key.substr(0, comma)), trim(key.substr(comma + 1))};
}

std::size_t one_based_index(const std::string& text, std::size_t arity, const std::string& key) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v < 1 || v > arity) {
    schema_error("pair key '" + key + "' must name predicates 1.." + std::to_string(arity));
  }
  return v - 1;
}

PartialJointSpec spec_from_json(const json& doc) {
  only_keys(doc, {"marginals", "pairwise", "independent"});
  const json& m = doc.at("marginals");
  if (!m.is_array() || m.empty()) schema_error("\"marginals\" must be a non-empty array");
  std::vector<Belief> marginals;
  for (std::size_t i = 0; i < m.size(); ++i) {
    marginals.push_back(belief_field(m[i], "marginals[" + std::to_string(i) + "]"));
  }
  if (marginals.size() > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "spec arity " + std::to_string(marginals.size()) +
                                              " exceeds " + std::to_string(kMaxArity));
  }
  std::map<PartialJointSpec::Pair, Belief> pairwise;
  if (doc.contains("pairwise")) {
    const json& pw = doc.at("pairwise");
    if (!pw.is_object()) schema_error("\"pairwise\" must be an object");
    for (const auto& [key, value] : pw.items()) {
      const auto [a, b] = split_pair_key(key);
      std::size_t i = one_based_index(a, marginals.size(), key);
      std::size_t j = one_based_index(b, marginals.size(), key);
      if (i == j) schema_error("pair key '" + key + "' repeats a predicate");
      if (i > j) std::swap(i, j);
      const Belief q = belief_field(value, "pairwise[\"" + key + "\"]");
      if (!pairwise.emplace(PartialJointSpec::Pair{i, j}, q).second) {
        schema_error("pair '" + key + "' given twice");
      }
    }
  }
  bool independent = false;
  if (doc.contains("independent")) {
    if (!doc.at("independent").is_boolean()) schema_error("\"independent\" must be a boolean");
    independent = doc.at("independent").get<bool>();
    if (independent && !pairwise.empty()) {
      schema_error("\"independent\": true excludes \"pairwise\"");
    }
  }
  return PartialJointSpec(std::move(marginals), std::move(pairwise), independent);
}

BeliefTable table_from_json(const json& doc) {
  only_keys(doc, {"universe", "p", "q_pair"});
  const json& u = doc.at("universe");
  if (!u.is_array()) schema_error("\"universe\" must be an array of strings");
  std::vector<std::string> universe;
  for (const json& label : u) {
    if (!label.is_string()) schema_error("\"universe\" must be an array of strings");
    universe.push_back(label.get<std::string>());
  }
  std::set<std::string> seen;
  for (const auto& label : universe) {
    if (!seen.insert(label).second) schema_error("duplicate universe point '" + label + "'");
  }
  if (!doc.contains("p") || !doc.at("p").is_object()) schema_error("\"p\" must be an object");
  const json& p = doc.at("p");
  std::vector<Belief> beliefs;
  for (const auto& label : universe) {
    if (!p.contains(label)) schema_error("\"p\" has no entry for '" + label + "'");
    beliefs.push_back(belief_field(p.at(label), "p[\"" + label + "\"]"));
  }
  for (const auto& [key, _] : p.items()) {
    if (!seen.contains(key)) schema_error("\"p\" names '" + key + "', which is not in the universe");
  }
  auto index = [&](const std::string& label, const std::string& key) {
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (universe[i] == label) return i;
    }
    schema_error("q_pair key '" + key + "' names unknown point '" + label + "'");
  };
  std::map<BeliefTable::Pair, Belief> q_pair;
  if (doc.contains("q_pair")) {
    const json& qp = doc.at("q_pair");
    if (!qp.is_object()) schema_error("\"q_pair\" must be an object");
    for (const auto& [key, value] : qp.items()) {
      const auto [a, b] = split_pair_key(key);
      std::size_t i = index(a, key);
      std::size_t j = index(b, key);
      if (i == j) schema_error("q_pair key '" + key + "' repeats a point");
      if (i > j) std::swap(i, j);
      const Belief q = belief_field(value, "q_pair[\"" + key + "\"]");
      if (!q_pair.emplace(BeliefTable::Pair{i, j}, q).second) {
        schema_error("q_pair '" + key + "' given twice");
      }
    }
  }
  return BeliefTable(std::move(universe), std::move(beliefs), std::move(q_pair));
}

JointBooleanDist joint_from_json(const json& doc) {
  only_keys(doc, {"arity", "probs"});
  const json& a = doc.at("arity");
  if (!a.is_number_unsigned() && !(a.is_number_integer() && a.get<long long>() >= 0)) {
    schema_error("\"arity\" must be a nonnegative integer");
  }
  const auto arity = a.get<std::size_t>();
  if (arity > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, "joint arity " + std::to_string(arity) + " exceeds " +
                                              std::to_string(kMaxArity));
  }
  const json& p = doc.at("probs");
  if (!p.is_array()) schema_error("\"probs\" must be an array");
  std::vector<double> probs;
  probs.reserve(p.size());
  for (const json& v : p) {
    if (!v.is_number()) schema_error("\"probs\" entries must be numbers");
    probs.push_back(v.get<double>());
  }
  if (probs.size() != (std::size_t{1} << arity)) {
    schema_error("\"probs\" must have " + std::to_string(std::size_t{1} << arity) +
                 " entries for arity " + std::to_string(arity));
  }
  return make_joint(arity, std::move(probs));
}

json parse_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) schema_error("model must be a JSON object");
    return doc;
  } catch (const json::exception& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto with_schema_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

void check_bindings(const Formula& f) {
  std::vector<Scope> scopes;
  check(f, scopes);
}

Model parse_model(std::string_view text) {
  const json doc = parse_json(text);
  return with_schema_errors([&]() -> Model {
    if (doc.contains("marginals")) return spec_from_json(doc);
    if (doc.contains("universe")) return table_from_json(doc);
    if (doc.contains("arity") || doc.contains("probs")) return joint_from_json(doc);
    schema_error("unrecognised model: expected \"marginals\", \"universe\" or \"arity\"/\"probs\"");
  });
}

PartialJointSpec parse_spec(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.contains("marginals")) schema_error("expected a spec with \"marginals\"");
  return with_schema_errors([&] { return spec_from_json(doc); });
}

BeliefTable parse_table(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.contains("universe")) schema_error("expected a belief table with \"universe\"");
  return with_schema_errors([&] { return table_from_json(doc); });
}

JointBooleanDist parse_joint(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.contains("arity")) schema_error("expected a joint with \"arity\" and \"probs\"");
  return with_schema_errors([&] { return joint_from_json(doc); });
}

}  // namespace markov_fuzzy
