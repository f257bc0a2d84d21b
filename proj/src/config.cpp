#include "gsip/config.hpp"

#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <variant>

#include "gsip/errors.hpp"

namespace gsip {

namespace {

using Value = std::variant<double, bool, std::string, std::vector<double>>;

struct Entry {
  Value value;
  std::size_t line = 0;
  std::size_t column = 0;  // column of the key
};

// section -> key -> entry; std::map keeps iteration deterministic.
using Document = std::map<std::string, std::map<std::string, Entry>>;

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"profile", {"kind", "value", "c", "scale"}},
      {"family", {"name", "a", "alpha", "R0", "u0", "C1", "b"}},
      {"grid", {"x_lo", "x_hi", "n", "auto_box"}},
      {"run",
       {"command", "id", "k", "out", "richardson", "ladder_levels", "tol_spectrum", "tol_ground_overlap",
        "tol_shape_invariance", "tol_annihilation", "tol_ladder_overlap", "tol_ladder_rayleigh"}},
      {"sweep", {"canonical", "param", "values"}},
  };
  return keys;
}

bool is_known(const std::string& section, const std::string& key) {
  const auto it = known_keys().find(section);
  if (it == known_keys().end()) return false;
  for (const auto& k : it->second) {
    if (k == key) return true;
  }
  return false;
}

std::string format17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + what, line_,
                      pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  std::size_t column() const { return pos_ + 1; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() { ++pos_; }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::string_view("+-.0123456789eE_").find(text_[pos_]) != std::string_view::npos) {
      ++pos_;
    }
    std::string token(text_.substr(start, pos_ - start));
    std::erase(token, '_');
    if (token.empty()) {
      pos_ = start;
      fail("expected a value");
    }
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
      pos_ = start;
      fail("'" + token + "' is not a finite number");
    }
    return v;
  }

  Value value() {
    skip_space();
    const char c = peek();
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return number();
  }

 private:
  std::string string_value() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= text_.size()) break;
        const char e = text_[pos_];
        if (e == 'n') out += '\n';
        else if (e == 't') out += '\t';
        else if (e == '"' || e == '\\') out += e;
        else fail(std::string("unknown escape '\\") + e + "'");
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::vector<double> array_value() {
    ++pos_;
    std::vector<double> out;
    skip_space();
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    for (;;) {
      out.push_back(number());
      skip_space();
      if (peek() == ',') {
        ++pos_;
        skip_space();
        if (peek() == ']') {
          ++pos_;
          return out;
        }
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      fail("expected ',' or ']'");
    }
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

void insert(Document& doc, const std::string& section, const std::string& key, Entry entry, bool replace) {
  if (!is_known(section, key)) {
    throw ConfigError("line " + std::to_string(entry.line) + ", column " + std::to_string(entry.column) +
                          ": unknown key '" + key + "' in [" + section + "]",
                      entry.line, entry.column, key);
  }
  auto& slot = doc[section];
  if (!replace && slot.count(key)) {
    throw ConfigError("line " + std::to_string(entry.line) + ", column " + std::to_string(entry.column) +
                          ": duplicate key '" + key + "'",
                      entry.line, entry.column, key);
  }
  slot[key] = std::move(entry);
}

Document parse_document(std::string_view text) {
  Document doc;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    LineParser p(line, line_no);
    if (!p.at_end_or_comment()) {
      if (p.peek() == '[') {
        p.advance();
        const std::size_t column = p.column();
        const std::string name = p.identifier();
        p.expect(']');
        if (!p.at_end_or_comment()) p.fail("unexpected text after section header");
        if (!known_keys().count(name)) {
          throw ConfigError("line " + std::to_string(line_no) + ", column " + std::to_string(column) +
                                ": unknown section [" + name + "]",
                            line_no, column, name);
        }
        section = name;
        doc[section];
      } else {
        const std::size_t column = p.column();
        const std::string key = p.identifier();
        if (section.empty()) p.fail("key '" + key + "' outside of any section");
        p.expect('=');
        Value v = p.value();
        if (!p.at_end_or_comment()) p.fail("unexpected text after value");
        insert(doc, section, key, Entry{std::move(v), line_no, column}, false);
      }
    }
    start = end + 1;
  }
  return doc;
}

void apply_override(Document& doc, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  const std::size_t dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  }
  const std::string section = assignment.substr(0, dot);
  const std::string rest = assignment.substr(dot + 1);
  if (!known_keys().count(section)) throw ConfigError("override names unknown section [" + section + "]", 0, 0, section);
  // Reuse the line parser; unquoted text that is not a number or bool is
  // taken as a string so `--set family.name=Hyperbolic` works.
  LineParser p(rest, 0);
  const std::string key = p.identifier();
  p.expect('=');
  Value v;
  try {
    v = p.value();
    if (!p.at_end_or_comment()) throw ConfigError("trailing text");
  } catch (const ConfigError&) {
    std::string raw = rest.substr(rest.find('=') + 1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.erase(raw.begin());
    v = raw;
  }
  insert(doc, section, key, Entry{std::move(v), 0, 0}, true);
}

class Reader {
 public:
  explicit Reader(const Document& doc) : doc_(doc) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  bool has_section(const std::string& section) const { return doc_.count(section) > 0; }

  std::optional<double> real(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (const double* v = std::get_if<double>(&e->value)) return *v;
    wrong_type(*e, section, key, "a number");
  }

  std::optional<std::int64_t> integer(const std::string& section, const std::string& key) const {
    const auto v = real(section, key);
    if (!v) return std::nullopt;
    if (std::floor(*v) != *v || std::abs(*v) > 9.0e15) wrong_type(*find(section, key), section, key, "an integer");
    return static_cast<std::int64_t>(*v);
  }

  std::optional<bool> boolean(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (const bool* v = std::get_if<bool>(&e->value)) return *v;
    wrong_type(*e, section, key, "true or false");
  }

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (const std::string* v = std::get_if<std::string>(&e->value)) return *v;
    wrong_type(*e, section, key, "a string");
  }

  std::optional<std::vector<double>> array(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (const auto* v = std::get_if<std::vector<double>>(&e->value)) return *v;
    wrong_type(*e, section, key, "an array of numbers");
  }

 private:
  [[noreturn]] static void wrong_type(const Entry& e, const std::string& section, const std::string& key,
                                      const std::string& expected) {
    throw ConfigError(section + "." + key + " must be " + expected, e.line, e.column, key);
  }

  const Document& doc_;
};

RunConfig from_document(const Document& doc) {
  const Reader r(doc);
  RunConfig config;

  if (auto kind = r.text("profile", "kind")) config.profile.kind = *kind;
  config.profile.value = r.real("profile", "value");
  config.profile.c = r.real("profile", "c");
  config.profile.scale = r.real("profile", "scale");

  if (r.has_section("family")) {
    FamilyConfig f;
    const auto name = r.text("family", "name");
    if (!name) throw ConfigError("[family] requires field 'name'", 0, 0, "name");
    f.name = *name;
    f.a = r.real("family", "a");
    f.alpha = r.real("family", "alpha");
    f.R0 = r.real("family", "R0");
    f.u0 = r.real("family", "u0");
    f.C1 = r.real("family", "C1");
    f.b = r.real("family", "b");
    config.family = f;
  }

  config.grid.x_lo = r.real("grid", "x_lo");
  config.grid.x_hi = r.real("grid", "x_hi");
  if (auto n = r.integer("grid", "n")) config.grid.n = *n;
  config.grid.auto_box = r.boolean("grid", "auto_box");

  if (auto command = r.text("run", "command")) {
    config.command = parse_command(*command);
    if (!config.command) {
      const Entry* e = r.find("run", "command");
      throw ConfigError("unknown command '" + *command + "'", e->line, e->column, "command");
    }
  }
  if (auto id = r.text("run", "id")) config.id = *id;
  if (auto k = r.integer("run", "k")) config.k = *k;
  if (auto out = r.text("run", "out")) config.out = *out;
  if (auto rich = r.boolean("run", "richardson")) config.richardson = *rich;
  if (auto ladder = r.integer("run", "ladder_levels")) config.ladder_levels = *ladder;
  Tolerances& tol = config.tolerances;
  if (auto v = r.real("run", "tol_spectrum")) tol.spectrum_rel = *v;
  if (auto v = r.real("run", "tol_ground_overlap")) tol.ground_overlap = *v;
  if (auto v = r.real("run", "tol_shape_invariance")) tol.shape_invariance = *v;
  if (auto v = r.real("run", "tol_annihilation")) tol.annihilation = *v;
  if (auto v = r.real("run", "tol_ladder_overlap")) tol.ladder_overlap = *v;
  if (auto v = r.real("run", "tol_ladder_rayleigh")) tol.ladder_rayleigh = *v;

  if (auto canonical = r.boolean("sweep", "canonical")) config.sweep.canonical = *canonical;
  config.sweep.param = r.text("sweep", "param");
  if (auto values = r.array("sweep", "values")) config.sweep.values = *values;
  return config;
}

[[noreturn]] void missing(const std::string& what, const std::string& field) {
  throw ConfigError(what + " requires field '" + field + "'", 0, 0, field);
}

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0)) throw ConfigError(field + " must be positive", 0, 0, field);
}

// Family parameters that have no meaningful default.
std::vector<std::string> required_family_fields(Family family) {
  switch (family) {
    case Family::OscShift: return {"R0"};
    case Family::Exponential: return {"alpha", "a"};
    case Family::OscLinearG: return {"a"};
    case Family::OscInverseG: return {"alpha", "C1", "a"};
    case Family::Trigonometric:
    case Family::Hyperbolic: return {"alpha", "a"};
  }
  return {};
}

const std::optional<double>& family_field(const FamilyConfig& f, const std::string& name) {
  if (name == "a") return f.a;
  if (name == "alpha") return f.alpha;
  if (name == "R0") return f.R0;
  if (name == "u0") return f.u0;
  if (name == "C1") return f.C1;
  return f.b;
}

}  // namespace

std::string_view command_name(Command command) {
  switch (command) {
    case Command::Generate: return "generate";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
    case Command::Tabulate: return "tabulate";
  }
  return "verify";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::Generate, Command::Verify, Command::Sweep, Command::Tabulate}) {
    if (command_name(c) == name) return c;
  }
  return std::nullopt;
}

void validate(const RunConfig& config) {
  const ProfileConfig& p = config.profile;
  if (p.kind == "constant") {
    if (p.value) require_positive(std::abs(*p.value), "value");
  } else if (p.kind == "inverse-linear") {
    if (!p.c) missing("profile 'inverse-linear'", "c");
    require_positive(std::abs(*p.c), "c");
  } else if (p.kind == "linear") {
    if (!p.scale) missing("profile 'linear'", "scale");
    require_positive(std::abs(*p.scale), "scale");
  } else if (p.kind != "sech-mass") {
    throw ConfigError("unknown profile kind '" + p.kind + "'", 0, 0, "kind");
  }
  if (p.value && p.kind != "constant") throw ConfigError("'value' only applies to constant profiles", 0, 0, "value");
  if (p.c && p.kind != "inverse-linear") throw ConfigError("'c' only applies to inverse-linear profiles", 0, 0, "c");
  if (p.scale && p.kind != "linear") throw ConfigError("'scale' only applies to linear profiles", 0, 0, "scale");

  const Command command = config.command.value_or(Command::Verify);
  if (config.family) {
    const auto family = parse_family(config.family->name);
    if (!family) throw ConfigError("unknown family '" + config.family->name + "'", 0, 0, "name");
    for (const auto& field : required_family_fields(*family)) {
      if (!family_field(*config.family, field)) missing("family '" + config.family->name + "'", field);
    }
  } else if (!(command == Command::Sweep && config.sweep.canonical)) {
    throw ConfigError("missing [family] section", 0, 0, "family");
  }

  const GridConfig& g = config.grid;
  if (g.x_lo.has_value() != g.x_hi.has_value()) {
    throw ConfigError("grid needs both x_lo and x_hi", 0, 0, g.x_lo ? "x_hi" : "x_lo");
  }
  if (g.x_lo && !(*g.x_lo < *g.x_hi)) throw ConfigError("grid requires x_lo < x_hi", 0, 0, "x_hi");
  if (!g.use_auto_box() && !g.x_lo) throw ConfigError("auto_box = false requires x_lo and x_hi", 0, 0, "x_lo");
  const std::int64_t min_nodes = (command == Command::Verify || command == Command::Sweep) ? 64 : 5;
  if (g.n < min_nodes) {
    throw ConfigError("grid n = " + std::to_string(g.n) + " is below the minimum " + std::to_string(min_nodes), 0, 0,
                      "n");
  }

  const std::int64_t min_k = (command == Command::Verify || command == Command::Sweep) ? 1 : 0;
  if (config.k < min_k || config.k > 10000) throw ConfigError("k out of range", 0, 0, "k");
  if (config.ladder_levels < 0) throw ConfigError("ladder_levels must be >= 0", 0, 0, "ladder_levels");
  const Tolerances& t = config.tolerances;
  const std::array<std::pair<double, const char*>, 6> tolerances = {{{t.spectrum_rel, "tol_spectrum"},
                                                                       {t.ground_overlap, "tol_ground_overlap"},
                                                                       {t.shape_invariance, "tol_shape_invariance"},
                                                                       {t.annihilation, "tol_annihilation"},
                                                                       {t.ladder_overlap, "tol_ladder_overlap"},
                                                                       {t.ladder_rayleigh, "tol_ladder_rayleigh"}}};
  for (const auto& [v, name] : tolerances) require_positive(v, name);
  if (config.id.empty()) throw ConfigError("id must not be empty", 0, 0, "id");

  if (config.sweep.param) {
    const std::string& param = *config.sweep.param;
    if (param != "a" && param != "alpha" && param != "R0" && param != "u0" && param != "C1" && param != "b") {
      throw ConfigError("sweep param '" + param + "' is not a family parameter", 0, 0, "param");
    }
    if (config.sweep.values.empty()) throw ConfigError("sweep param needs a non-empty values array", 0, 0, "values");
    if (!config.family) throw ConfigError("sweep param needs a [family] section", 0, 0, "family");
  } else if (!config.sweep.values.empty()) {
    throw ConfigError("sweep values given without param", 0, 0, "param");
  }
}

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides,
                       std::optional<Command> command) {
  Document doc = parse_document(text);
  for (const auto& o : overrides) apply_override(doc, o);
  RunConfig config = from_document(doc);
  if (command) config.command = command;
  validate(config);
  return config;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  const auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      if (c == '\n') {
        q += "\\n";
        continue;
      }
      if (c == '\t') {
        q += "\\t";
        continue;
      }
      q += c;
    }
    return q + "\"";
  };
  const auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << format17(*v) << '\n';
  };
  const auto flag = [](bool b) { return b ? "true" : "false"; };

  out << "[profile]\nkind = " << quoted(config.profile.kind) << '\n';
  opt("value", config.profile.value);
  opt("c", config.profile.c);
  opt("scale", config.profile.scale);

  if (config.family) {
    const FamilyConfig& f = *config.family;
    out << "\n[family]\nname = " << quoted(f.name) << '\n';
    opt("a", f.a);
    opt("alpha", f.alpha);
    opt("R0", f.R0);
    opt("u0", f.u0);
    opt("C1", f.C1);
    opt("b", f.b);
  }

  out << "\n[grid]\n";
  opt("x_lo", config.grid.x_lo);
  opt("x_hi", config.grid.x_hi);
  out << "n = " << config.grid.n << '\n';
  if (config.grid.auto_box) out << "auto_box = " << flag(*config.grid.auto_box) << '\n';

  out << "\n[run]\n";
  if (config.command) out << "command = " << quoted(std::string(command_name(*config.command))) << '\n';
  out << "id = " << quoted(config.id) << '\n'
      << "k = " << config.k << '\n'
      << "out = " << quoted(config.out) << '\n'
      << "richardson = " << flag(config.richardson) << '\n'
      << "ladder_levels = " << config.ladder_levels << '\n';
  const Tolerances& t = config.tolerances;
  out << "tol_spectrum = " << format17(t.spectrum_rel) << '\n'
      << "tol_ground_overlap = " << format17(t.ground_overlap) << '\n'
      << "tol_shape_invariance = " << format17(t.shape_invariance) << '\n'
      << "tol_annihilation = " << format17(t.annihilation) << '\n'
      << "tol_ladder_overlap = " << format17(t.ladder_overlap) << '\n'
      << "tol_ladder_rayleigh = " << format17(t.ladder_rayleigh) << '\n';

  const SweepConfig& s = config.sweep;
  if (s.canonical || s.param || !s.values.empty()) {
    out << "\n[sweep]\ncanonical = " << flag(s.canonical) << '\n';
    if (s.param) out << "param = " << quoted(*s.param) << '\n';
    if (!s.values.empty()) {
      out << "values = [";
      for (std::size_t i = 0; i < s.values.size(); ++i) out << (i ? ", " : "") << format17(s.values[i]);
      out << "]\n";
    }
  }
  return out.str();
}

MassProfile build_profile(const ProfileConfig& config) {
  if (config.kind == "constant") return MassProfile::constant(config.value.value_or(1.0 / std::sqrt(2.0)));
  if (config.kind == "inverse-linear") return MassProfile::inverse_linear(config.c.value());
  if (config.kind == "linear") return MassProfile::linear_scaled(config.scale.value());
  if (config.kind == "sech-mass") return MassProfile::sech_like();
  throw ConfigError("unknown profile kind '" + config.kind + "'", 0, 0, "kind");
}

FamilySpec build_family_spec(const RunConfig& config) {
  if (!config.family) throw ConfigError("missing [family] section", 0, 0, "family");
  const FamilyConfig& f = *config.family;
  const auto family = parse_family(f.name);
  if (!family) throw ConfigError("unknown family '" + f.name + "'", 0, 0, "name");
  FamilySpec spec;
  spec.family = *family;
  if (f.a) spec.a = *f.a;
  if (f.alpha) spec.alpha = *f.alpha;
  if (f.R0) spec.R0 = *f.R0;
  if (f.u0) spec.u0 = *f.u0;
  if (f.C1) spec.C1 = *f.C1;
  if (f.b) spec.b = *f.b;
  spec.profile = build_profile(config.profile);
  return spec;
}

}  // namespace gsip
