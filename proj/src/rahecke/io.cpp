#include "rahecke/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace rahecke::io {

using coxeter::CoxeterGraph;
using coxeter::Letters;
using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::optional<double> to_double(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

}  // namespace

GraphPtr parse_graph_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    const std::size_t offset = err.byte > 0 ? err.byte - 1 : 0;
    const auto [line, col] = line_column(text, offset);
    std::string what = err.what();
    if (const auto colon = what.find("parse error"); colon != std::string::npos) what = what.substr(colon);
    throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": malformed graph JSON (" + what + ")");
  }
  auto fail = [&](const std::string& msg) -> GraphPtr { throw ValidationError(source + ": " + msg); };
  if (!doc.is_object()) return fail("graph JSON must be an object");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    return fail("missing array \"generators\"");
  std::vector<std::string> names;
  for (const auto& g : doc["generators"]) {
    if (!g.is_string()) return fail("generator names must be strings");
    names.push_back(g.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (doc.contains("commuting_pairs")) {
    if (!doc["commuting_pairs"].is_array()) return fail("\"commuting_pairs\" must be an array");
    for (const auto& p : doc["commuting_pairs"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        return fail("each commuting pair must be a two-element array of names");
      pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  for (const auto& [key, value] : doc.items())
    if (key != "generators" && key != "commuting_pairs" && key != "label")
      return fail("unknown key \"" + key + "\"");
  std::string label = doc.value("label", std::string{});
  try {
    return std::make_shared<const CoxeterGraph>(std::move(names), pairs, std::move(label));
  } catch (const ValidationError& err) {
    return fail(err.what());
  }
}

GraphPtr load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str(), path);
}

std::string graph_to_json(const CoxeterGraph& g) {
  json doc;
  doc["generators"] = g.names();
  auto& pairs = doc["commuting_pairs"] = json::array();
  for (const auto& [a, b] : g.edges()) pairs.push_back({g.name(a), g.name(b)});
  if (!g.label().empty()) doc["label"] = g.label();
  return doc.dump();
}

GraphPtr builtin_graph(std::string_view name) {
  if (name == "dihedral")
    return std::make_shared<const CoxeterGraph>(std::vector<std::string>{"s", "t"},
                                                std::vector<std::pair<std::string, std::string>>{},
                                                "dihedral");
  if (name == "square")
    return std::make_shared<const CoxeterGraph>(
        std::vector<std::string>{"u", "v", "s", "t"},
        std::vector<std::pair<std::string, std::string>>{{"u", "s"}, {"u", "t"}, {"v", "s"}, {"v", "t"}},
        "square");
  if (name == "pentagon")
    return std::make_shared<const CoxeterGraph>(
        std::vector<std::string>{"s1", "s2", "s3", "s4", "s5"},
        std::vector<std::pair<std::string, std::string>>{
            {"s1", "s2"}, {"s2", "s3"}, {"s3", "s4"}, {"s4", "s5"}, {"s5", "s1"}},
        "pentagon");
  return nullptr;
}

std::vector<std::string> builtin_graph_names() { return {"dihedral", "square", "pentagon"}; }

GraphPtr resolve_graph(const std::string& name_or_path) {
  if (auto g = builtin_graph(name_or_path)) return g;
  return load_graph_file(name_or_path);
}

namespace {

bool split_names(std::string_view text, const CoxeterGraph& g, std::vector<std::size_t>& order,
                 Letters& out) {
  if (text.empty()) return true;
  for (std::size_t idx : order) {
    const std::string& name = g.name(static_cast<coxeter::Generator>(idx));
    if (text.substr(0, name.size()) != name) continue;
    out.push_back(static_cast<coxeter::Generator>(idx));
    if (split_names(text.substr(name.size()), g, order, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

Letters parse_letters(std::string_view text, const CoxeterGraph& g) {
  const std::string t = trim(text);
  if (t == "e" || t == "1") return {};
  if (t.empty()) throw ValidationError("empty word");
  std::vector<std::size_t> order(g.rank());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.name(static_cast<coxeter::Generator>(a)).size() >
           g.name(static_cast<coxeter::Generator>(b)).size();
  });
  Letters out;
  if (!split_names(t, g, order, out))
    throw ValidationError("cannot read \"" + t + "\" as a word in the generators");
  return out;
}

coxeter::NormalWord parse_word(std::string_view text, const CoxeterGraph& g) {
  return coxeter::normalize(parse_letters(text, g), g);
}

namespace {

// Replaces U+2212 by '-' so the scanner only sees ASCII signs.
std::string ascii_minus(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out += '-';
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

// "2", "2.5i", "i", "-i" and "(a+bi)".
std::optional<Complex> parse_coefficient(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  if (t.front() == '(') {
    if (t.back() != ')') return std::nullopt;
    const std::string inner = trim(std::string_view(t).substr(1, t.size() - 2));
    // Split at the last sign that is not an exponent sign and not leading.
    for (std::size_t k = inner.size(); k-- > 1;) {
      if ((inner[k] == '+' || inner[k] == '-') && inner[k - 1] != 'e' && inner[k - 1] != 'E') {
        const auto re = to_double(inner.substr(0, k));
        const auto im = parse_coefficient(inner.substr(k));
        if (re && im && im->real() == 0.0) return Complex(*re, im->imag());
        return std::nullopt;
      }
    }
    return parse_coefficient(inner);
  }
  if (t.back() == 'i') {
    std::string body = t.substr(0, t.size() - 1);
    if (body.empty() || body == "+") return Complex(0.0, 1.0);
    if (body == "-") return Complex(0.0, -1.0);
    if (const auto v = to_double(body)) return Complex(0.0, *v);
    return std::nullopt;
  }
  if (const auto v = to_double(t)) return Complex(*v, 0.0);
  return std::nullopt;
}

}  // namespace

HeckeElement parse_element(std::string_view text, const MultiParameter& q) {
  const std::string src = ascii_minus(text);
  const auto& g = q.graph();
  // Split into signed terms at top-level + and -, skipping signs inside
  // parentheses and exponent signs of numbers.
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1, depth = 0;
  std::string cur;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const char ch = src[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      const std::string head = trim(cur);
      const bool exponent = head.size() >= 2 && (head.back() == 'e' || head.back() == 'E') &&
                            to_double(std::string_view(head).substr(0, head.size() - 1)).has_value();
      if (!exponent) {
        if (head.empty()) {
          if (ch == '-') sign = -sign;
        } else {
          terms.emplace_back(sign, cur);
          sign = ch == '-' ? -1 : 1;
        }
        cur.clear();
        continue;
      }
    }
    cur += ch;
  }
  if (depth != 0) throw ValidationError("unbalanced parentheses in element literal");
  if (trim(cur).empty()) throw ValidationError("element literal is empty or ends with a sign");
  terms.emplace_back(sign, cur);

  HeckeElement x(q);
  for (const auto& [s, raw] : terms) {
    const std::string term = trim(raw);
    Complex c = 1.0;
    std::string word;
    if (const auto star = term.rfind('*'); star != std::string::npos) {
      const auto coef = parse_coefficient(term.substr(0, star));
      if (!coef) throw ValidationError("bad coefficient in term \"" + term + "\"");
      c = *coef;
      word = trim(std::string_view(term).substr(star + 1));
    } else if (const auto coef = parse_coefficient(term)) {
      c = *coef;
      word = "e";
    } else {
      word = term;
    }
    if (word.empty()) throw ValidationError("missing word in term \"" + term + "\"");
    const auto w = parse_word(word, g);
    x.add(w.letters(), static_cast<double>(s) * c);
  }
  return x;
}

MultiParameter parse_q(std::string_view text, const GraphPtr& graph) {
  std::optional<double> all;
  std::map<coxeter::Generator, double> single;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("q entry \"" + trim(item) + "\" needs name=value");
    const std::string name = trim(std::string_view(item).substr(0, eq));
    const auto value = to_double(std::string_view(item).substr(eq + 1));
    if (!value) throw ValidationError("q entry \"" + trim(item) + "\" has no numeric value");
    if (name == "all") {
      if (all) throw ValidationError("\"all\" given twice in q spec");
      all = *value;
      continue;
    }
    const auto s = graph->find(name);
    if (!s) throw ValidationError("q spec names unknown generator \"" + name + "\"");
    if (!single.emplace(*s, *value).second)
      throw ValidationError("generator \"" + name + "\" given twice in q spec");
  }
  std::vector<double> values(graph->rank());
  for (std::size_t s = 0; s < values.size(); ++s) {
    const auto it = single.find(static_cast<coxeter::Generator>(s));
    if (it != single.end()) values[s] = it->second;
    else if (all) values[s] = *all;
    else throw ValidationError("q spec gives no value for generator \"" +
                               graph->name(static_cast<coxeter::Generator>(s)) + "\"");
  }
  return MultiParameter(graph, std::move(values));
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto v = to_double(item);
    if (!v) throw ValidationError("\"" + trim(item) + "\" is not a number");
    out.push_back(*v);
  }
  if (out.empty()) throw ValidationError("empty number list");
  return out;
}

}  // namespace rahecke::io
