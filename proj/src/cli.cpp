#include "markov_fuzzy/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "markov_fuzzy/bounds.hpp"
#include "markov_fuzzy/connectives.hpp"
#include "markov_fuzzy/dsl.hpp"
#include "markov_fuzzy/error.hpp"
#include "markov_fuzzy/formula.hpp"
#include "markov_fuzzy/joint.hpp"
#include "markov_fuzzy/quantifiers.hpp"

namespace markov_fuzzy::cli {

using nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityTooLarge:
      return kLimitError;
    case ErrorCode::ArityMismatch:
    case ErrorCode::UnboundVariable:
    case ErrorCode::DuplicateVariable:
    case ErrorCode::UnexpandedQuantifier:
    case ErrorCode::InvalidQuantifier:
    case ErrorCode::MultiOutput:
    case ErrorCode::MarginalMismatch:
    case ErrorCode::UnsupportedLiftPolicy:
      return kSemanticError;
    default:
      return kInputError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t arity_cap() {
  std::size_t cap = kMaxArity;
  if (const char* env = std::getenv("MARKOV_FUZZY_MAX_ARITY")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw UsageError("MARKOV_FUZZY_MAX_ARITY must be a nonnegative integer");
    }
    cap = std::min(cap, v);
  }
  return cap;
}

void check_arity(std::size_t arity) {
  const std::size_t cap = arity_cap();
  if (arity > cap) {
    throw Error(ErrorCode::ArityTooLarge,
                "arity " + std::to_string(arity) + " exceeds the limit " + std::to_string(cap));
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
  }
  return out;
}

// Splits "P12" into ("P", 12). Returns false without a numeric suffix.
bool split_indexed(const std::string& name, std::string& prefix, std::size_t& index) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut == 0 || cut == name.size()) return false;
  const auto [ptr, ec] = std::from_chars(name.data() + cut, name.data() + name.size(), index);
  if (ec != std::errc{} || index == 0) return false;
  prefix = name.substr(0, cut);
  return true;
}

bool natural_less(const std::string& a, const std::string& b) {
  std::string pa, pb;
  std::size_t ia = 0, ib = 0;
  if (split_indexed(a, pa, ia) && split_indexed(b, pb, ib) && pa == pb) return ia < ib;
  return a < b;
}

// Maps formula atoms onto the coordinates of an arity-n model. An explicit
// --vars list wins; otherwise atoms P1..Pn address coordinates by index and
// anything else is taken in natural order.
std::vector<std::string> resolve_ordering(const Formula& f, std::size_t arity,
                                          const std::string& vars) {
  if (!vars.empty()) {
    std::vector<std::string> ordering = split_list(vars);
    if (ordering.size() != arity) {
      throw Error(ErrorCode::ArityMismatch, "--vars names " + std::to_string(ordering.size()) +
                                                " variables, model arity is " +
                                                std::to_string(arity));
    }
    return ordering;
  }
  const std::vector<std::string> names = atoms(f);
  std::string common;
  bool indexed = !names.empty();
  for (const auto& name : names) {
    std::string prefix;
    std::size_t index = 0;
    if (!split_indexed(name, prefix, index) || (!common.empty() && prefix != common)) {
      indexed = false;
      break;
    }
    common = prefix;
  }
  std::vector<std::string> ordering(arity);
  if (indexed) {
    for (const auto& name : names) {
      std::string prefix;
      std::size_t index = 0;
      split_indexed(name, prefix, index);
      if (index > arity) {
        throw Error(ErrorCode::ArityMismatch, "formula refers to " + name +
                                                  " but the model has arity " +
                                                  std::to_string(arity));
      }
      ordering[index - 1] = name;
    }
  } else {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end(), natural_less);
    if (sorted.size() > arity) {
      throw Error(ErrorCode::ArityMismatch, "formula has " + std::to_string(sorted.size()) +
                                                " variables but the model has arity " +
                                                std::to_string(arity));
    }
    std::copy(sorted.begin(), sorted.end(), ordering.begin());
  }
  const std::set<std::string> used(names.begin(), names.end());
  std::size_t fresh = 0;
  for (auto& slot : ordering) {
    while (slot.empty()) {
      std::string candidate = "_" + std::to_string(++fresh);
      if (!used.contains(candidate)) slot = std::move(candidate);
    }
  }
  return ordering;
}

Formula parse_checked(const std::string& text) {
  Formula f = parse_formula(text);
  if (!is_quantifier_free(f)) {
    throw Error(ErrorCode::UnexpandedQuantifier,
                "this subcommand needs a quantifier-free formula; use 'quantify'");
  }
  return f;
}

void emit_json(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << '\n'; }

void emit_csv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  if (cfg.formula.empty()) throw UsageError("eval needs --formula");
  if (cfg.input.empty()) throw UsageError("eval needs --input");
  const Formula f = parse_checked(cfg.formula);
  const JointBooleanDist joint = parse_joint(read_file(cfg.input));
  check_arity(joint.arity());
  const auto ordering = resolve_ordering(f, joint.arity(), cfg.vars);
  const JointBooleanDist image = pushforward(joint, compile(f, ordering));
  if (cfg.format == Format::Csv) {
    emit_csv(out, {"outcome", "probability"},
             {{"false", format_double(image[0])}, {"true", format_double(image[1])}});
  } else {
    ordered_json doc;
    doc["formula"] = to_string(f);
    doc["variables"] = ordering;
    doc["true"] = image[1];
    doc["distribution"] = {{"false", image[0]}, {"true", image[1]}};
    emit_json(out, doc);
  }
  return kOk;
}

// For two-variable specs without pairwise data, names the classic flavors
// whose closed form matches each end of the interval.
ordered_json flavor_names(const PartialJointSpec& spec, const BooleanFunction& f,
                          const ConfidenceInterval& ci) {
  if (spec.arity() != 2 || spec.independent() || !spec.pairwise().empty()) return nullptr;
  const std::array<std::pair<Connective, BooleanFunction>, 3> kinds = {{
      {Connective::And, BooleanFunction::conjunction()},
      {Connective::Or, BooleanFunction::disjunction()},
      {Connective::Implies, BooleanFunction::implication()},
  }};
  for (const auto& [kind, table] : kinds) {
    if (!(table == f)) continue;
    const Belief p1 = spec.marginals()[0];
    const Belief p2 = spec.marginals()[1];
    auto match = [&](double v) -> ordered_json {
      for (Flavor fl : {Flavor::Min, Flavor::Indep, Flavor::Max}) {
        if (std::abs(classic(p1, p2, kind, fl) - v) <= kConstraintTolerance) {
          return std::string(to_string(fl));
        }
      }
      return nullptr;
    };
    return {{"connective", std::string(to_string(kind))}, {"lo", match(ci.lo)}, {"hi", match(ci.hi)}};
  }
  return nullptr;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  if (cfg.formula.empty()) throw UsageError("bounds needs --formula");
  if (cfg.input.empty()) throw UsageError("bounds needs --input");
  const Formula f = parse_checked(cfg.formula);
  const PartialJointSpec spec = parse_spec(read_file(cfg.input));
  check_arity(spec.arity());
  const auto ordering = resolve_ordering(f, spec.arity(), cfg.vars);
  const BooleanFunction table = compile(f, ordering);
  const ConfidenceInterval ci = exact_bounds(spec, table);
  std::optional<ConfidenceInterval> oracle;
  if (cfg.grid) oracle = brute_force_bounds(spec, table, *cfg.grid);
  if (cfg.format == Format::Csv) {
    std::vector<std::string> header{"lo", "hi"};
    std::vector<std::string> row{format_double(ci.lo), format_double(ci.hi)};
    if (oracle) {
      header.insert(header.end(), {"oracle_lo", "oracle_hi"});
      row.insert(row.end(), {format_double(oracle->lo), format_double(oracle->hi)});
    }
    emit_csv(out, header, {row});
  } else {
    ordered_json doc;
    doc["formula"] = to_string(f);
    doc["variables"] = ordering;
    doc["lo"] = ci.lo.value();
    doc["hi"] = ci.hi.value();
    if (auto names = flavor_names(spec, table, ci); !names.is_null()) doc["flavors"] = names;
    if (oracle) doc["oracle"] = {{"grid", *cfg.grid}, {"lo", oracle->lo.value()}, {"hi", oracle->hi.value()}};
    emit_json(out, doc);
  }
  return kOk;
}

std::pair<Belief, Belief> sweep_marginals(const RunConfig& cfg) {
  std::vector<Belief> m;
  if (!cfg.marginals.empty()) {
    for (const auto& item : split_list(cfg.marginals)) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size() || !(v >= 0.0 && v <= 1.0)) {
        throw UsageError("--marginals entries must be numbers in [0, 1], got '" + item + "'");
      }
      m.emplace_back(v);
    }
  } else if (!cfg.input.empty()) {
    const PartialJointSpec spec = parse_spec(read_file(cfg.input));
    m = spec.marginals();
  } else {
    throw UsageError("sweep needs --marginals or --input");
  }
  if (m.size() != 2) {
    throw Error(ErrorCode::ArityMismatch,
                "sweep needs exactly two marginals, got " + std::to_string(m.size()));
  }
  return {m[0], m[1]};
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.steps < 2) throw UsageError("--steps must be at least 2 (it counts rows, endpoints included)");
  const auto [p1, p2] = sweep_marginals(cfg);
  std::optional<BooleanFunction> extra;
  std::vector<std::string> ordering;
  if (!cfg.formula.empty()) {
    const Formula f = parse_checked(cfg.formula);
    ordering = resolve_ordering(f, 2, cfg.vars);
    extra = compile(f, ordering);
  }
  const QBounds b = q_bounds(p1, p2);
  std::vector<double> qs;
  if (b.q_max - b.q_min <= 0.0) {
    qs.push_back(b.q_min);
  } else {
    for (std::size_t k = 0; k < cfg.steps; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(cfg.steps - 1);
      qs.push_back(k + 1 == cfg.steps ? b.q_max.value() : b.q_min + t * (b.q_max - b.q_min));
    }
  }
  std::vector<std::array<double, 5>> rows;
  for (double q : qs) {
    const Belief qb(q);
    double formula_value = 0.0;
    if (extra) formula_value = pushforward(pair_from_pq(p1, p2, qb), *extra)[1];
    rows.push_back({q, and_q(p1, p2, qb), or_q(p1, p2, qb), implies_q(p1, p2, qb), formula_value});
  }
  if (cfg.format == Format::Csv) {
    std::vector<std::string> header{"q", "and", "or", "implies"};
    if (extra) header.push_back("formula");
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < header.size(); ++i) line.push_back(format_double(r[i]));
      cells.push_back(std::move(line));
    }
    emit_csv(out, header, cells);
  } else {
    ordered_json doc;
    doc["p1"] = p1.value();
    doc["p2"] = p2.value();
    doc["q_min"] = b.q_min.value();
    doc["q_max"] = b.q_max.value();
    if (extra) doc["formula"] = cfg.formula;
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row = {{"q", r[0]}, {"and", r[1]}, {"or", r[2]}, {"implies", r[3]}};
      if (extra) row["formula"] = r[4];
      list.push_back(std::move(row));
    }
    doc["rows"] = std::move(list);
    emit_json(out, doc);
  }
  return kOk;
}

int cmd_quantify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw UsageError("quantify needs --input");
  if (cfg.quantifier != "exists" && cfg.quantifier != "forall") {
    throw UsageError("--quantifier must be 'exists' or 'forall'");
  }
  const bool forall = cfg.quantifier == "forall";
  const BeliefTable table = parse_table(read_file(cfg.input));
  if (table.empty()) throw Error(ErrorCode::EmptyUniverse, "cannot quantify over an empty universe");
  if (cfg.mode == "bounds") {
    const ConfidenceInterval ci = forall ? forall_bounds(table) : exists_bounds(table);
    if (cfg.format == Format::Csv) {
      emit_csv(out, {"quantifier", "lo", "hi"},
               {{cfg.quantifier, format_double(ci.lo), format_double(ci.hi)}});
    } else {
      ordered_json doc;
      doc["quantifier"] = cfg.quantifier;
      doc["universe"] = table.universe();
      doc["lo"] = ci.lo.value();
      doc["hi"] = ci.hi.value();
      emit_json(out, doc);
    }
    return kOk;
  }
  if (cfg.mode != "sample") throw UsageError("--mode must be 'bounds' or 'sample'");
  if (cfg.samples < 1) throw UsageError("--samples must be at least 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  SamplingStrategy strategy;
  strategy.seed = cfg.seed;
  strategy.tuple_length = cfg.tuple_length;
  const ExistsEstimate est =
      sample_exists(forall ? table.negated() : table, strategy, cfg.samples);
  const double mean = forall ? 1.0 - est.mean.value() : est.mean.value();
  const double radius = est.hoeffding_radius(cfg.delta);
  if (cfg.format == Format::Csv) {
    emit_csv(out, {"quantifier", "mean", "radius", "n", "seed"},
             {{cfg.quantifier, format_double(mean), format_double(radius),
               std::to_string(est.samples), std::to_string(est.seed)}});
  } else {
    ordered_json doc;
    doc["quantifier"] = cfg.quantifier;
    doc["mean"] = mean;
    doc["radius"] = radius;
    doc["delta"] = cfg.delta;
    doc["n"] = est.samples;
    doc["seed"] = est.seed;
    doc["tuple_length"] = cfg.tuple_length;
    emit_json(out, doc);
  }
  return kOk;
}

void print_parse_error(const ParseError& e, const std::string& text, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  err << "  " << text << '\n';
  const std::size_t width = std::max<std::size_t>(1, e.span().end - e.span().start);
  err << "  " << std::string(e.span().start, ' ') << std::string(width, '^') << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Probabilistic fuzzy logic over Markov predicates", "markov-fuzzy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "markov-fuzzy 0.1.0");

  std::string format = "json";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "model file (JSON)");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto* eval = app.add_subcommand("eval", "confidence of a formula under a joint table");
  common(eval);
  eval->add_option("--formula", cfg.formula)->required();
  eval->add_option("--vars", cfg.vars, "comma-separated variable per coordinate");

  auto* bounds = app.add_subcommand("bounds", "sharp interval for a formula under a partial spec");
  common(bounds);
  bounds->add_option("--formula", cfg.formula)->required();
  bounds->add_option("--vars", cfg.vars, "comma-separated variable per coordinate");
  bounds->add_option("--grid", cfg.grid, "also run the enumeration oracle at this tolerance");

  auto* sweep = app.add_subcommand("sweep", "connectives along the q family of two marginals");
  common(sweep);
  sweep->add_option("--formula", cfg.formula, "extra column for this formula");
  sweep->add_option("--vars", cfg.vars);
  sweep->add_option("--marginals", cfg.marginals, "p1,p2");
  sweep->add_option("--steps", cfg.steps, "rows including both endpoints");

  auto* quantify = app.add_subcommand("quantify", "quantifiers over a belief table");
  common(quantify);
  quantify->add_option("--mode", cfg.mode)->check(CLI::IsMember({"bounds", "sample"}));
  quantify->add_option("--quantifier", cfg.quantifier)->check(CLI::IsMember({"exists", "forall"}));
  quantify->add_option("--seed", cfg.seed);
  quantify->add_option("--samples", cfg.samples);
  quantify->add_option("--delta", cfg.delta);
  quantify->add_option("--tuple-length", cfg.tuple_length);

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "markov-fuzzy 0.1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  cfg.format = format == "csv" ? Format::Csv : Format::Json;

  try {
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (bounds->parsed()) return cmd_bounds(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    return cmd_quantify(cfg, out);
  } catch (const ParseError& e) {
    print_parse_error(e, cfg.formula, err);
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace markov_fuzzy::cli
