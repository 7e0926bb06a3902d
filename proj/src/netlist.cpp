#include "meminductor/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "meminductor/error.hpp"

namespace meminductor {

std::string_view to_string(NetlistErrorCode code) {
  switch (code) {
    case NetlistErrorCode::Lexical: return "E_LEXICAL";
    case NetlistErrorCode::UnknownElementKind: return "E_UNKNOWN_KIND";
    case NetlistErrorCode::MalformedParameters: return "E_MALFORMED_PARAMS";
    case NetlistErrorCode::DuplicateName: return "E_DUPLICATE_NAME";
    case NetlistErrorCode::BadDirective: return "E_BAD_DIRECTIVE";
    case NetlistErrorCode::BadValue: return "E_BAD_VALUE";
    case NetlistErrorCode::SourceCount: return "E_SOURCE_COUNT";
    case NetlistErrorCode::NonSeriesTopology: return "E_TOPOLOGY";
    case NetlistErrorCode::NonPositiveCapacitance: return "E_CAPACITANCE";
    case NetlistErrorCode::MissingTran: return "E_MISSING_TRAN";
    case NetlistErrorCode::MultipleInductive: return "E_MULTIPLE_INDUCTIVE";
  }
  return "E_UNKNOWN";
}

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::V: return "V";
    case ElementKind::R: return "R";
    case ElementKind::L: return "L";
    case ElementKind::C: return "C";
    case ElementKind::MLStair: return "MLSTAIR";
    case ElementKind::MLCore: return "MLCORE";
  }
  return "?";
}

NetlistError::NetlistError(NetlistErrorCode code, int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + std::string(to_string(code)) + ": " + message),
      code_(code),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

std::string upper(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return r;
}

std::string lower(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return r;
}

[[noreturn]] void fail(NetlistErrorCode code, SourceLoc loc, const std::string& msg) {
  throw NetlistError(code, loc.line, loc.column, msg);
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Word, LParen, RParen, Comma, Equals };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' ||
         c == '-';
}

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> toks;
  std::size_t k = 0;
  while (k < line.size()) {
    const char c = line[k];
    const int col = static_cast<int>(k) + 1;
    if (c == '#' || c == ';') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++k;
      continue;
    }
    switch (c) {
      case '(': toks.push_back({Tok::LParen, "(", col}); ++k; continue;
      case ')': toks.push_back({Tok::RParen, ")", col}); ++k; continue;
      case ',': toks.push_back({Tok::Comma, ",", col}); ++k; continue;
      case '=': toks.push_back({Tok::Equals, "=", col}); ++k; continue;
      default: break;
    }
    if (!is_word_char(c)) {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? std::string(1, c)
                              : "\\x" + std::to_string(static_cast<unsigned char>(c));
      fail(NetlistErrorCode::Lexical, {line_no, col}, "unexpected character '" + shown + "'");
    }
    const std::size_t start = k;
    while (k < line.size() && is_word_char(line[k])) ++k;
    toks.push_back({Tok::Word, std::string(line.substr(start, k - start)), col});
  }
  return toks;
}

double number_or_fail(const Token& t, int line_no) {
  double v = 0.0;
  if (t.kind != Tok::Word || !parse_eng_number(t.text, v)) {
    fail(NetlistErrorCode::Lexical, {line_no, t.column}, "invalid number '" + t.text + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Parser

struct ModelSpec {
  std::string_view name;
  int positional;  // -1: any even count >= 2, 0: named only
  std::vector<std::string_view> keys;
};

const std::vector<ModelSpec>& model_specs() {
  static const std::vector<ModelSpec> specs = {
      {"SIN", 3, {}},
      {"PULSE", 6, {}},
      {"STEP", 3, {}},
      {"PWL", -1, {}},
      {"MLCORE", 0, {"flux_scale", "sw", "m0"}},
      {"MLSTAIR", 0, {"l0", "delta"}},
  };
  return specs;
}

const ModelSpec* find_model(std::string_view upper_name) {
  for (const auto& s : model_specs()) {
    if (s.name == upper_name) return &s;
  }
  return nullptr;
}

ModelCall parse_model_call(const std::vector<Token>& toks, std::size_t& pos, int line_no) {
  ModelCall call;
  const Token& head = toks[pos];
  call.name = upper(head.text);
  pos += 2;  // name and '('
  bool closed = false;
  while (pos < toks.size()) {
    const Token& t = toks[pos];
    if (t.kind == Tok::RParen) {
      closed = true;
      ++pos;
      break;
    }
    if (t.kind == Tok::Comma) {
      ++pos;
      continue;
    }
    if (t.kind != Tok::Word) {
      fail(NetlistErrorCode::MalformedParameters, {line_no, t.column},
           "unexpected '" + t.text + "' in parameter list");
    }
    if (pos + 1 < toks.size() && toks[pos + 1].kind == Tok::Equals) {
      if (pos + 2 >= toks.size() || toks[pos + 2].kind != Tok::Word) {
        fail(NetlistErrorCode::MalformedParameters, {line_no, toks[pos + 1].column},
             "missing value after '" + t.text + "='");
      }
      const std::string key = lower(t.text);
      for (const auto& [k, v] : call.named) {
        if (k == key) {
          fail(NetlistErrorCode::MalformedParameters, {line_no, t.column},
               "parameter '" + key + "' given twice");
        }
      }
      call.named.emplace_back(key, number_or_fail(toks[pos + 2], line_no));
      pos += 3;
    } else {
      call.positional.push_back(number_or_fail(t, line_no));
      ++pos;
    }
  }
  if (!closed) {
    fail(NetlistErrorCode::MalformedParameters, {line_no, head.column},
         "unterminated parameter list for " + call.name);
  }
  return call;
}

void check_model_arity(const ModelCall& call, const ModelSpec& spec, SourceLoc loc) {
  if (spec.positional == 0) {
    if (!call.positional.empty()) {
      fail(NetlistErrorCode::MalformedParameters, loc,
           call.name + " takes key=value parameters only");
    }
    for (const auto& [k, v] : call.named) {
      if (std::find(spec.keys.begin(), spec.keys.end(), k) == spec.keys.end()) {
        fail(NetlistErrorCode::MalformedParameters, loc,
             "unknown parameter '" + k + "' for " + call.name);
      }
    }
    return;
  }
  if (!call.named.empty()) {
    fail(NetlistErrorCode::MalformedParameters, loc, call.name + " takes positional parameters only");
  }
  const auto n = static_cast<int>(call.positional.size());
  if (spec.positional < 0) {
    if (n < 2 || n % 2 != 0) {
      fail(NetlistErrorCode::MalformedParameters, loc, call.name + " needs (time value) pairs");
    }
  } else if (n != spec.positional) {
    fail(NetlistErrorCode::MalformedParameters, loc,
         call.name + " expects " + std::to_string(spec.positional) + " parameters, got " +
             std::to_string(n));
  }
}

void parse_directive(const std::vector<Token>& toks, int line_no, NetlistDocument& doc,
                     bool& ended) {
  const Token& head = toks.front();
  const std::string name = lower(head.text);
  const SourceLoc loc{line_no, head.column};
  for (std::size_t k = 1; k < toks.size(); ++k) {
    if (toks[k].kind != Tok::Word) {
      fail(NetlistErrorCode::BadDirective, {line_no, toks[k].column},
           "unexpected '" + toks[k].text + "' in " + name);
    }
  }
  if (name == ".tran") {
    if (toks.size() != 3) fail(NetlistErrorCode::BadDirective, loc, ".tran expects <step> <stop>");
    doc.tran.push_back({number_or_fail(toks[1], line_no), number_or_fail(toks[2], line_no), loc});
  } else if (name == ".print") {
    PrintDirective p{{}, loc};
    for (std::size_t k = 1; k < toks.size(); ++k) {
      const std::string sig = lower(toks[k].text);
      if (!is_trace_signal(sig)) {
        fail(NetlistErrorCode::BadDirective, {line_no, toks[k].column},
             "unknown signal '" + toks[k].text + "'");
      }
      p.signals.push_back(sig);
    }
    if (p.signals.empty()) fail(NetlistErrorCode::BadDirective, loc, ".print needs at least one signal");
    doc.prints.push_back(std::move(p));
  } else if (name == ".end") {
    ended = true;
  } else {
    fail(NetlistErrorCode::BadDirective, loc, "unknown directive '" + head.text + "'");
  }
}

NetlistElement parse_element(const std::vector<Token>& toks, int line_no) {
  const Token& head = toks.front();
  const SourceLoc loc{line_no, head.column};
  if (!std::isalpha(static_cast<unsigned char>(head.text.front()))) {
    fail(NetlistErrorCode::Lexical, loc, "element name must start with a letter: '" + head.text + "'");
  }
  if (toks.size() < 4) {
    fail(NetlistErrorCode::MalformedParameters, loc,
         "expected '" + head.text + " <node> <node> <value>'");
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    if (toks[k].kind != Tok::Word) {
      fail(NetlistErrorCode::MalformedParameters, {line_no, toks[k].column},
           "unexpected '" + toks[k].text + "'");
    }
  }
  NetlistElement el;
  el.name = head.text;
  el.node_a = toks[1].text;
  el.node_b = toks[2].text;
  el.loc = loc;

  std::size_t pos = 3;
  const bool is_call = pos + 1 < toks.size() && toks[pos + 1].kind == Tok::LParen;
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(head.text.front())));
  if (is_call) {
    const std::string model = upper(toks[pos].text);
    const ModelSpec* spec = find_model(model);
    if (spec == nullptr) {
      fail(NetlistErrorCode::UnknownElementKind, {line_no, toks[pos].column},
           "unknown model '" + toks[pos].text + "'");
    }
    ModelCall call = parse_model_call(toks, pos, line_no);
    check_model_arity(call, *spec, {line_no, toks[3].column});
    if (model == "MLCORE") {
      el.kind = ElementKind::MLCore;
    } else if (model == "MLSTAIR") {
      el.kind = ElementKind::MLStair;
    } else if (letter == 'V') {
      el.kind = ElementKind::V;
    } else {
      fail(NetlistErrorCode::MalformedParameters, {line_no, toks[3].column},
           model + " is only valid on a V source");
    }
    el.value = std::move(call);
  } else {
    switch (letter) {
      case 'V': el.kind = ElementKind::V; break;
      case 'R': el.kind = ElementKind::R; break;
      case 'L': el.kind = ElementKind::L; break;
      case 'C': el.kind = ElementKind::C; break;
      default:
        fail(NetlistErrorCode::UnknownElementKind, loc, "unknown element kind '" + head.text + "'");
    }
    el.value = number_or_fail(toks[pos], line_no);
    ++pos;
  }
  if (pos < toks.size()) {
    fail(NetlistErrorCode::MalformedParameters, {line_no, toks[pos].column},
         "unexpected trailing '" + toks[pos].text + "'");
  }
  return el;
}

}  // namespace

bool parse_eng_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  std::size_t start = 0;
  if (text.front() == '+') start = 1;  // from_chars rejects a leading '+'
  double v = 0.0;
  const char* first = text.data() + start;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr == first) return false;
  std::string rest = lower(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  double scale = 1.0;
  std::size_t used = 0;
  if (rest.rfind("meg", 0) == 0) {
    scale = 1e6;
    used = 3;
  } else if (!rest.empty()) {
    switch (rest.front()) {
      case 't': scale = 1e12; used = 1; break;
      case 'g': scale = 1e9; used = 1; break;
      case 'k': scale = 1e3; used = 1; break;
      case 'm': scale = 1e-3; used = 1; break;
      case 'u': scale = 1e-6; used = 1; break;
      case 'n': scale = 1e-9; used = 1; break;
      case 'p': scale = 1e-12; used = 1; break;
      case 'f': scale = 1e-15; used = 1; break;
      default: break;
    }
  }
  for (std::size_t k = used; k < rest.size(); ++k) {
    if (!std::isalpha(static_cast<unsigned char>(rest[k]))) return false;
  }
  v *= scale;
  if (!std::isfinite(v)) return false;
  out = v;
  return true;
}

bool is_trace_signal(std::string_view name) {
  static const std::set<std::string_view> names = {"time", "v_in", "i", "v_out", "q", "l_eff"};
  return names.contains(name);
}

NetlistDocument parse_netlist(std::string_view text) {
  NetlistDocument doc;
  std::map<std::string, int> seen;  // upper-cased name -> line
  int line_no = 0;
  bool ended = false;
  std::size_t begin = 0;
  while (begin <= text.size() && !ended) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto toks = tokenize(line, line_no);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks.front().kind != Tok::Word) {
      fail(NetlistErrorCode::Lexical, {line_no, toks.front().column},
           "line must start with an element name or directive");
    }
    if (toks.front().text.front() == '.') {
      parse_directive(toks, line_no, doc, ended);
    } else {
      NetlistElement el = parse_element(toks, line_no);
      const std::string key = upper(el.name);
      if (auto it = seen.find(key); it != seen.end()) {
        fail(NetlistErrorCode::DuplicateName, el.loc,
             "duplicate element name '" + el.name + "' (first defined on line " +
                 std::to_string(it->second) + ")");
      }
      seen.emplace(key, line_no);
      doc.elements.push_back(std::move(el));
    }
    if (end == text.size()) break;
  }
  // A final newline terminates the last line rather than starting a new one.
  doc.line_count = (!ended && !text.empty() && text.back() == '\n') ? line_no - 1 : line_no;
  return doc;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

double named_or(const ModelCall& call, std::string_view key, double fallback) {
  for (const auto& [k, v] : call.named) {
    if (k == key) return v;
  }
  return fallback;
}

Waveform source_waveform(const NetlistElement& el) {
  if (const double* dc = std::get_if<double>(&el.value)) return Waveform::constant(*dc);
  const auto& call = std::get<ModelCall>(el.value);
  const auto& a = call.positional;
  try {
    if (call.name == "SIN") return Waveform(Sine{a[0], a[1], a[2]});
    if (call.name == "STEP") return Waveform(Step{a[0], a[1], a[2]});
    if (call.name == "PULSE") {
      if (a[5] < 0.0 || a[5] != std::floor(a[5]) || a[5] > 1e9) {
        fail(NetlistErrorCode::BadValue, el.loc, "PULSE count must be a non-negative integer");
      }
      return Waveform(PulseTrain{a[0], a[1], a[2], a[3], a[4], static_cast<int>(a[5])});
    }
    PiecewiseLinear pwl;
    for (std::size_t k = 0; k + 1 < a.size(); k += 2) pwl.points.emplace_back(a[k], a[k + 1]);
    return Waveform(std::move(pwl));
  } catch (const Error& e) {
    fail(NetlistErrorCode::BadValue, el.loc, e.what());
  }
}

InductiveElement inductive_element(const NetlistElement& el) {
  try {
    switch (el.kind) {
      case ElementKind::L: {
        const double l = std::get<double>(el.value);
        if (!(l > 0.0)) fail(NetlistErrorCode::BadValue, el.loc, "inductance must be > 0");
        return LinearInductor{l};
      }
      case ElementKind::MLStair: {
        const auto& call = std::get<ModelCall>(el.value);
        const double l0 = named_or(call, "l0", 2.0);
        const double delta = named_or(call, "delta", 0.2);
        if (!(l0 > 0.0)) fail(NetlistErrorCode::BadValue, el.loc, "MLSTAIR l0 must be > 0");
        if (!(delta >= 0.0 && delta < 1.0)) {
          fail(NetlistErrorCode::BadValue, el.loc, "MLSTAIR delta must be in [0, 1)");
        }
        return StaircaseInductor{l0, delta};
      }
      case ElementKind::MLCore: {
        const auto& call = std::get<ModelCall>(el.value);
        return CoilCoreElement{CoilCoreParams(
            named_or(call, "flux_scale", CoilCoreParams::kDefaultFluxScale),
            named_or(call, "sw", CoilCoreParams::kDefaultSwEff),
            named_or(call, "m0", CoilCoreParams::kDefaultM0))};
      }
      default: break;
    }
  } catch (const Error& e) {
    fail(NetlistErrorCode::BadValue, el.loc, e.what());
  }
  fail(NetlistErrorCode::UnknownElementKind, el.loc, "not an inductive element");
}

SourceLoc end_loc(const NetlistDocument& doc) { return {std::max(doc.line_count, 1), 1}; }

}  // namespace

CompiledCircuit validate_circuit(const NetlistDocument& doc) {
  const NetlistElement* source = nullptr;
  const NetlistElement* resistor = nullptr;
  const NetlistElement* inductive = nullptr;
  const NetlistElement* capacitor = nullptr;

  for (const auto& el : doc.elements) {
    switch (el.kind) {
      case ElementKind::V:
        if (source != nullptr) {
          fail(NetlistErrorCode::SourceCount, el.loc, "exactly one V source is allowed");
        }
        source = &el;
        break;
      case ElementKind::R:
        if (resistor != nullptr) {
          fail(NetlistErrorCode::NonSeriesTopology, el.loc,
               "second resistor '" + el.name + "': the loop takes exactly one R");
        }
        resistor = &el;
        break;
      case ElementKind::C:
        if (capacitor != nullptr) {
          fail(NetlistErrorCode::NonSeriesTopology, el.loc,
               "second capacitor '" + el.name + "': the loop takes exactly one C");
        }
        capacitor = &el;
        break;
      default:
        if (inductive != nullptr) {
          fail(NetlistErrorCode::MultipleInductive, el.loc,
               "second inductive element '" + el.name + "'");
        }
        inductive = &el;
        break;
    }
  }
  if (source == nullptr) fail(NetlistErrorCode::SourceCount, end_loc(doc), "no V source");
  if (resistor == nullptr || inductive == nullptr || capacitor == nullptr) {
    fail(NetlistErrorCode::NonSeriesTopology, end_loc(doc),
         "the loop needs one each of V, R, an inductive element and C");
  }

  // Walk the ring starting at the source's first node.
  const std::vector<const NetlistElement*> ring = {source, resistor, inductive, capacitor};
  std::map<std::string, int> degree;
  for (const auto* el : ring) {
    if (el->node_a == el->node_b) {
      fail(NetlistErrorCode::NonSeriesTopology, el->loc,
           "element '" + el->name + "' is shorted (both nodes '" + el->node_a + "')");
    }
    ++degree[el->node_a];
    ++degree[el->node_b];
  }
  for (const auto& [node, d] : degree) {
    if (d != 2) {
      const NetlistElement* at = source;
      for (const auto* el : ring) {
        if (el->node_a == node || el->node_b == node) at = el;
      }
      fail(NetlistErrorCode::NonSeriesTopology, at->loc,
           "node '" + node + "' joins " + std::to_string(d) + " elements; a series loop needs 2");
    }
  }
  if (!degree.contains("0")) {
    fail(NetlistErrorCode::NonSeriesTopology, source->loc, "ground node '0' is missing");
  }
  std::map<const NetlistElement*, int> orientation;
  {
    const NetlistElement* prev = source;
    std::string node = source->node_a;
    for (int hops = 0; hops < 4; ++hops) {
      const NetlistElement* next = nullptr;
      for (const auto* el : ring) {
        if (el != prev && (el->node_a == node || el->node_b == node)) next = el;
      }
      if (next == nullptr) break;
      if (next == source) break;
      orientation[next] = next->node_a == node ? 1 : -1;
      node = next->node_a == node ? next->node_b : next->node_a;
      prev = next;
    }
    if (orientation.size() != 3 || node != source->node_b) {
      fail(NetlistErrorCode::NonSeriesTopology, source->loc,
           "elements do not form a single closed series loop");
    }
  }

  CompiledCircuit c;
  c.source = source_waveform(*source);

  const double r = std::get<double>(resistor->value);
  if (!(r >= 0.0)) fail(NetlistErrorCode::BadValue, resistor->loc, "resistance must be >= 0");
  c.resistance = r;

  const double cap = std::get<double>(capacitor->value);
  if (!(cap > 0.0)) {
    fail(NetlistErrorCode::NonPositiveCapacitance, capacitor->loc,
         "capacitance must be > 0, got " + std::to_string(cap));
  }
  c.capacitance = cap;
  c.inductive = inductive_element(*inductive);

  if (doc.tran.empty()) fail(NetlistErrorCode::MissingTran, end_loc(doc), "missing .tran directive");
  if (doc.tran.size() > 1) {
    fail(NetlistErrorCode::BadDirective, doc.tran[1].loc, "only one .tran directive is allowed");
  }
  const auto& tran = doc.tran.front();
  if (!(tran.step > 0.0 && tran.step < tran.stop)) {
    fail(NetlistErrorCode::BadDirective, tran.loc, ".tran needs 0 < step < stop");
  }
  c.tran = {tran.step, tran.stop};
  for (const auto& p : doc.prints) {
    for (const auto& s : p.signals) {
      if (std::find(c.outputs.begin(), c.outputs.end(), s) == c.outputs.end()) c.outputs.push_back(s);
    }
  }

  c.inductive_orientation = orientation.at(inductive);
  c.capacitor_orientation = orientation.at(capacitor);
  c.source_name = source->name;
  c.resistor_name = resistor->name;
  c.inductive_name = inductive->name;
  c.capacitor_name = capacitor->name;
  return c;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string print_netlist(const NetlistDocument& doc) {
  std::ostringstream out;
  for (const auto& el : doc.elements) {
    out << el.name << ' ' << el.node_a << ' ' << el.node_b << ' ';
    if (const double* v = std::get_if<double>(&el.value)) {
      out << fmt_number(*v);
    } else {
      const auto& call = std::get<ModelCall>(el.value);
      out << call.name << '(';
      bool first = true;
      for (double v : call.positional) {
        out << (first ? "" : " ") << fmt_number(v);
        first = false;
      }
      for (const auto& [k, v] : call.named) {
        out << (first ? "" : ", ") << k << '=' << fmt_number(v);
        first = false;
      }
      out << ')';
    }
    out << '\n';
  }
  for (const auto& t : doc.tran) out << ".tran " << fmt_number(t.step) << ' ' << fmt_number(t.stop) << '\n';
  for (const auto& p : doc.prints) {
    out << ".print";
    for (const auto& s : p.signals) out << ' ' << s;
    out << '\n';
  }
  out << ".end\n";
  return out.str();
}

bool same_structure(const NetlistDocument& a, const NetlistDocument& b) {
  if (a.elements.size() != b.elements.size() || a.tran.size() != b.tran.size() ||
      a.prints.size() != b.prints.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.elements.size(); ++k) {
    const auto& x = a.elements[k];
    const auto& y = b.elements[k];
    if (x.name != y.name || x.kind != y.kind || x.node_a != y.node_a || x.node_b != y.node_b ||
        x.value != y.value) {
      return false;
    }
  }
  for (std::size_t k = 0; k < a.tran.size(); ++k) {
    if (a.tran[k].step != b.tran[k].step || a.tran[k].stop != b.tran[k].stop) return false;
  }
  for (std::size_t k = 0; k < a.prints.size(); ++k) {
    if (a.prints[k].signals != b.prints[k].signals) return false;
  }
  return true;
}

}  // namespace meminductor
