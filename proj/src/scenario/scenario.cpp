#include "hsp/scenario/scenario.hpp"

#include <fstream>
#include <sstream>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// Recursive renamed copy for doubles: same shape, every generator name
// suffixed.
GroupPtr renamed_copy(const MarkedGroup& g, const std::string& suffix) {
  switch (g.kind()) {
    case MarkedGroup::Kind::trivial:
      return MarkedGroup::make_trivial(g.name() + suffix);
    case MarkedGroup::Kind::free:
    case MarkedGroup::Kind::free_abelian: {
      std::vector<std::string> gens;
      for (const auto& n : g.generator_names()) gens.push_back(n + suffix);
      return g.kind() == MarkedGroup::Kind::free
                 ? MarkedGroup::make_free(g.name() + suffix, gens)
                 : MarkedGroup::make_free_abelian(g.name() + suffix, gens);
    }
    case MarkedGroup::Kind::direct_product:
    case MarkedGroup::Kind::free_product: {
      std::vector<GroupPtr> factors;
      for (const auto& f : g.factors())
        factors.push_back(renamed_copy(*f, suffix));
      return g.kind() == MarkedGroup::Kind::direct_product
                 ? MarkedGroup::make_direct_product(g.name() + suffix,
                                                    factors)
                 : MarkedGroup::make_free_product(g.name() + suffix, factors);
    }
  }
  throw invalid_input_error("unreachable group kind");
}

std::string rename_word(const std::string& word, const MarkedGroup& from,
                        const std::string& suffix) {
  // token-wise: NAME or NAME^INT; names that are generators of `from` get
  // the suffix
  std::map<std::string, int> gens;
  for (const auto& n : from.generator_names()) gens[n] = 1;
  std::ostringstream out;
  std::string token;
  bool first = true;
  auto flush = [&]() {
    if (token.empty()) return;
    std::string name = token, exp;
    if (auto c = token.find('^'); c != std::string::npos) {
      name = token.substr(0, c);
      exp = token.substr(c);
    }
    if (!first) out << ' ';
    first = false;
    out << (gens.count(name) ? name + suffix : name) << exp;
    token.clear();
  };
  for (char ch : word) {
    if (ch == ' ' || ch == '*' || ch == '\t')
      flush();
    else
      token.push_back(ch);
  }
  flush();
  return out.str();
}

void build_splitting(Scenario& sc, int line_for_errors) {
  auto& d = *sc.splitting;
  try {
    std::vector<Element> images_a, images_b;
    for (const auto& w : d.embed_a_words)
      images_a.push_back(parse_word(*d.A, w));
    GroupPtr target_b = d.kind == SplittingDescription::Kind::hnn ? d.A : d.B;
    for (const auto& w : d.embed_b_words)
      images_b.push_back(parse_word(*target_b, w));
    auto ea = make_subgroup_engine(d.A, d.C, images_a);
    auto eb = make_subgroup_engine(target_b, d.C, images_b);
    if (d.kind == SplittingDescription::Kind::hnn)
      d.built = Splitting::hnn(d.name, d.A, d.C, ea, eb,
                               d.stable_letter_central);
    else
      d.built =
          Splitting::amalgam(d.name, d.A, d.B, d.C, ea, eb, d.double_flag);
  } catch (const capability_error& e) {
    d.engine_error = e.what();
  } catch (const invalid_input_error& e) {
    throw scenario_parse_error(line_for_errors,
                               std::string("splitting rejected: ") + e.what());
  }
}

}  // namespace

SplittingPtr Scenario::require_splitting() const {
  if (!splitting)
    throw invalid_input_error("scenario declares no splitting");
  if (!splitting->built)
    throw capability_error("edge group outside the supported engine classes: " +
                           splitting->engine_error);
  return splitting->built;
}

NeighborOracle Scenario::main_oracle() const {
  auto it = groups.find(main_group);
  if (it == groups.end())
    throw invalid_input_error("no main group to probe");
  std::vector<Element> gens;
  for (std::size_t i = 0; i < it->second->ngens(); ++i) {
    gens.push_back(it->second->generator(i));
    gens.push_back(inverse(it->second->generator(i)));
  }
  return ball_oracle(it->second, gens);
}

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  std::string copy_suffix = "_2";
  int splitting_line = 0;
  std::vector<std::pair<std::string, std::string>> embeds;  // target, rhs

  auto group_of = [&](const std::string& name) {
    auto it = sc.groups.find(name);
    if (it == sc.groups.end())
      throw scenario_parse_error(lineno, "unknown group: " + name);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!header_seen) {
      if (toks.size() != 2 || toks[0] != "scenario" || toks[1] != "v1")
        throw scenario_parse_error(lineno, "expected header: scenario v1");
      header_seen = true;
      continue;
    }
    const std::string& key = toks[0];
    if (key == "name") {
      if (toks.size() != 2) throw scenario_parse_error(lineno, "name <id>");
      sc.name = toks[1];
    } else if (key == "group") {
      if (toks.size() < 3)
        throw scenario_parse_error(lineno, "group <name> <kind> ...");
      const std::string& name = toks[1];
      const std::string& kind = toks[2];
      if (sc.groups.count(name))
        throw scenario_parse_error(lineno, "group redeclared: " + name);
      GroupPtr g;
      std::vector<std::string> rest(toks.begin() + 3, toks.end());
      try {
        if (kind == "free")
          g = MarkedGroup::make_free(name, rest);
        else if (kind == "abelian")
          g = MarkedGroup::make_free_abelian(name, rest);
        else if (kind == "trivial")
          g = MarkedGroup::make_trivial(name);
        else if (kind == "freeproduct" || kind == "directproduct") {
          std::vector<GroupPtr> factors;
          for (const auto& f : rest) factors.push_back(group_of(f));
          g = kind == "freeproduct"
                  ? MarkedGroup::make_free_product(name, factors)
                  : MarkedGroup::make_direct_product(name, factors);
        } else {
          throw scenario_parse_error(lineno, "unknown group kind: " + kind);
        }
      } catch (const invalid_input_error& e) {
        throw scenario_parse_error(lineno, e.what());
      }
      sc.groups[name] = g;
      sc.group_order.push_back(name);
    } else if (key == "splitting") {
      if (toks.size() != 2)
        throw scenario_parse_error(lineno, "splitting <kind>");
      SplittingDescription d;
      if (toks[1] == "amalgam")
        d.kind = SplittingDescription::Kind::amalgam;
      else if (toks[1] == "hnn")
        d.kind = SplittingDescription::Kind::hnn;
      else if (toks[1] == "double") {
        d.kind = SplittingDescription::Kind::amalgam;
        d.double_flag = true;
      } else {
        throw scenario_parse_error(lineno, "unknown splitting kind");
      }
      sc.splitting = d;
      splitting_line = lineno;
    } else if (key == "vertex") {
      if (!sc.splitting) throw scenario_parse_error(lineno, "vertex before splitting");
      auto g = group_of(toks.at(1));
      if (!sc.splitting->A)
        sc.splitting->A = g;
      else if (!sc.splitting->B)
        sc.splitting->B = g;
      else
        throw scenario_parse_error(lineno, "too many vertex groups");
    } else if (key == "edge") {
      if (!sc.splitting) throw scenario_parse_error(lineno, "edge before splitting");
      sc.splitting->C = group_of(toks.at(1));
    } else if (key == "embed") {
      if (!sc.splitting) throw scenario_parse_error(lineno, "embed before splitting");
      auto colon = line.find(':');
      if (colon == std::string::npos)
        throw scenario_parse_error(lineno, "embed <target> : g -> word ; ...");
      auto head = split_ws(line.substr(0, colon));
      if (head.size() != 2) throw scenario_parse_error(lineno, "embed target");
      embeds.push_back({head[1], line.substr(colon + 1)});
    } else if (key == "flag") {
      if (!sc.splitting) throw scenario_parse_error(lineno, "flag before splitting");
      const std::string& f = toks.at(1);
      if (f == "stable-letter-central")
        sc.splitting->stable_letter_central = true;
      else if (f == "double")
        sc.splitting->double_flag = true;
      else if (f == "assume-one-ended")
        sc.splitting->assume_one_ended = true;
      else
        throw scenario_parse_error(lineno, "unknown flag: " + f);
    } else if (key == "copy-suffix") {
      copy_suffix = toks.at(1);
    } else if (key == "main") {
      sc.main_group = toks.at(1);
      group_of(sc.main_group);
    } else if (key == "probe") {
      if (toks.size() != 3) throw scenario_parse_error(lineno, "probe <k> <v>");
      if (toks[1] == "inner")
        sc.probe_inner = std::stoi(toks[2]);
      else if (toks[1] == "radius")
        sc.probe_radius = std::stoi(toks[2]);
      else
        throw scenario_parse_error(lineno, "unknown probe key");
    } else if (key == "budget") {
      sc.budget = std::size_t(std::stoll(toks.at(1)));
    } else if (key == "rounds") {
      sc.rounds = std::stoi(toks.at(1));
    } else {
      throw scenario_parse_error(lineno, "unknown directive: " + key);
    }
  }
  if (!header_seen) throw scenario_parse_error(1, "empty scenario");

  if (sc.splitting) {
    auto& d = *sc.splitting;
    d.name = sc.name.empty() ? "scenario" : sc.name;
    if (!d.A) throw scenario_parse_error(splitting_line, "missing vertex group");
    if (!d.C) throw scenario_parse_error(splitting_line, "missing edge group");
    bool is_hnn = d.kind == SplittingDescription::Kind::hnn;
    if (d.double_flag) {
      if (d.B) throw scenario_parse_error(splitting_line,
                                          "doubles take a single vertex group");
      d.B = renamed_copy(*d.A, copy_suffix);
    }
    if (!is_hnn && !d.B)
      throw scenario_parse_error(splitting_line, "amalgam needs two vertex groups");

    // assemble embeddings: per C generator, in declaration order
    d.embed_a_words.assign(d.C->ngens(), "");
    d.embed_b_words.assign(d.C->ngens(), "");
    std::map<std::string, std::size_t> cgen;
    for (std::size_t i = 0; i < d.C->ngens(); ++i)
      cgen[d.C->generator_names()[i]] = i;
    for (auto& [target, rhs] : embeds) {
      bool to_a, to_b;
      if (is_hnn) {
        to_a = target == "minus";
        to_b = target == "plus";
      } else if (d.double_flag) {
        to_a = target == "base" || target == d.A->name();
        to_b = false;
      } else {
        to_a = d.A && target == d.A->name();
        to_b = d.B && target == d.B->name();
      }
      if (!to_a && !to_b)
        throw scenario_parse_error(splitting_line,
                                   "embed target not recognized: " + target);
      std::istringstream parts(rhs);
      std::string clause;
      while (std::getline(parts, clause, ';')) {
        auto arrow = clause.find("->");
        if (arrow == std::string::npos)
          throw scenario_parse_error(splitting_line, "embed clause needs ->");
        auto lhs_toks = split_ws(clause.substr(0, arrow));
        if (lhs_toks.size() != 1)
          throw scenario_parse_error(splitting_line, "embed lhs");
        auto it = cgen.find(lhs_toks[0]);
        if (it == cgen.end())
          throw scenario_parse_error(splitting_line,
                                     "unknown edge generator: " + lhs_toks[0]);
        std::string word = clause.substr(arrow + 2);
        (to_a ? d.embed_a_words : d.embed_b_words)[it->second] = word;
      }
    }
    if (d.double_flag)
      for (std::size_t i = 0; i < d.C->ngens(); ++i)
        d.embed_b_words[i] = rename_word(d.embed_a_words[i], *d.A, copy_suffix);
    for (std::size_t i = 0; i < d.C->ngens(); ++i) {
      if (split_ws(d.embed_a_words[i]).empty())
        throw scenario_parse_error(
            splitting_line, "missing A-side image for edge generator " +
                                d.C->generator_names()[i]);
      if (split_ws(d.embed_b_words[i]).empty())
        throw scenario_parse_error(
            splitting_line, "missing second image for edge generator " +
                                d.C->generator_names()[i]);
    }
    build_splitting(sc, splitting_line);
  } else if (sc.main_group.empty() && sc.group_order.size() == 1) {
    sc.main_group = sc.group_order.front();
  }
  return sc;
}

Scenario parse_scenario_text(const std::string& text) {
  std::istringstream is(text);
  return parse_scenario(is);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw invalid_input_error("cannot open scenario file: " + path);
  return parse_scenario(f);
}

}  // namespace hsp
