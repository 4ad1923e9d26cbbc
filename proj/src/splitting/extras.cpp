#include "hsp/splitting/extras.hpp"

#include <algorithm>

#include "hsp/errors.hpp"
#include "hsp/graph/serialize.hpp"

namespace hsp {

SplittingPtr artificial_split(const SplittingPtr& spec, GroupPtr d_abstract,
                              const EnginePtr& d_engine_in_b) {
  if (!spec->is_amalgam())
    throw invalid_input_error("artificial_split needs an amalgam");
  GroupPtr B = spec->vertex_group_b();
  if (d_engine_in_b->ambient() != B.get())
    throw invalid_input_error("the D engine must live in B");
  if (d_engine_in_b->abstract_group().get() != d_abstract.get())
    throw invalid_input_error("the D engine must present the declared D");

  // containment C <= D
  for (const auto& img : spec->engine_b()->generator_images())
    if (!d_engine_in_b->contains(img))
      throw invalid_input_error(
          "containment error: an edge-group generator is not in D");

  // D = B makes the right vertex group equal the edge group: a trivial-edge
  // splitting, and the left group A *_C B has no marked-group form
  if (d_engine_in_b->is_whole_group())
    throw invalid_input_error(
        "artificial split with D = B is a trivial-edge splitting; refused");

  // express the C-generators inside D
  const std::size_t nc = spec->edge_group()->ngens();
  std::vector<Element> c_in_d;
  for (std::size_t i = 0; i < nc; ++i)
    c_in_d.push_back(
        d_engine_in_b->express(spec->engine_b()->generator_images()[i]));

  // D = C: pure relabeling
  bool d_is_c = d_abstract->ngens() == nc;
  if (d_is_c) {
    // every D generator must be in the C image
    for (std::size_t j = 0; j < d_abstract->ngens(); ++j)
      if (!spec->engine_b()->contains(d_engine_in_b->generator_images()[j]))
        d_is_c = false;
  }
  if (d_is_c) {
    std::vector<Element> new_a_images;
    for (std::size_t j = 0; j < d_abstract->ngens(); ++j) {
      Element c = spec->engine_b()->express(
          d_engine_in_b->generator_images()[j]);
      new_a_images.push_back(spec->engine_a()->include(c));
    }
    auto ea = make_subgroup_engine(spec->vertex_group_a(), d_abstract,
                                   new_a_images);
    return Splitting::amalgam(spec->name() + "_relabeled",
                              spec->vertex_group_a(), B, d_abstract, ea,
                              d_engine_in_b);
  }

  // general move: D must be a free product with one factor carrying C
  if (d_abstract->kind() != MarkedGroup::Kind::free_product)
    throw capability_error(
        "artificial_split: D must be a free product with a factor equal to "
        "C (or D = C)");
  // identify the factor: every expressed C-generator is a single generator
  // of a common factor, bijectively
  std::vector<Word> words;
  for (const auto& c : c_in_d) words.push_back(to_word(c));
  std::size_t f0 = std::size_t(-1);
  std::vector<char> seen_gen;
  for (std::size_t i = 0; i < nc; ++i) {
    if (words[i].size() != 1 || words[i][0] < 0)
      throw capability_error(
          "artificial_split: C does not map onto a factor of D by "
          "generators");
    std::size_t gi = std::size_t(words[i][0] - 1);
    std::size_t f = d_abstract->factor_of_generator(gi);
    if (f0 == std::size_t(-1)) {
      f0 = f;
      seen_gen.assign(d_abstract->factors()[f0]->ngens(), 0);
    }
    if (f != f0)
      throw capability_error(
          "artificial_split: C generators land in several factors of D");
    std::size_t local = gi - d_abstract->generator_offset(f0);
    if (seen_gen[local])
      throw capability_error("artificial_split: repeated factor generator");
    seen_gen[local] = 1;
  }
  if (std::find(seen_gen.begin(), seen_gen.end(), 0) != seen_gen.end())
    throw capability_error(
        "artificial_split: C maps onto a proper subgroup of the factor");

  // A' = A * (other factors of D)
  GroupPtr A = spec->vertex_group_a();
  std::vector<GroupPtr> factors = {A};
  for (std::size_t f = 0; f < d_abstract->factors().size(); ++f)
    if (f != f0) factors.push_back(d_abstract->factors()[f]);
  auto a_prime =
      MarkedGroup::make_free_product(spec->name() + "_Aprime", factors);

  // D -> A': the C-factor goes through the old A-side inclusion, the other
  // factors map onto the fresh free factors of A'
  auto inject_a = [&](const Element& a) {
    return from_word(*a_prime, to_word(a));  // A is factor 0 of A'
  };
  std::vector<Element> d_images_in_aprime(d_abstract->ngens(),
                                          a_prime->identity());
  for (std::size_t i = 0; i < nc; ++i) {
    std::size_t gi = std::size_t(words[i][0] - 1);
    d_images_in_aprime[gi] =
        inject_a(spec->engine_a()->generator_images()[i]);
  }
  std::size_t extra_offset = A->ngens();
  for (std::size_t f = 0; f < d_abstract->factors().size(); ++f) {
    if (f == f0) continue;
    for (std::size_t j = 0; j < d_abstract->factors()[f]->ngens(); ++j) {
      std::size_t gi = d_abstract->generator_offset(f) + j;
      d_images_in_aprime[gi] = a_prime->generator(extra_offset);
      ++extra_offset;
    }
  }
  auto ea = make_subgroup_engine(a_prime, d_abstract, d_images_in_aprime);
  return Splitting::amalgam(spec->name() + "_artificial", a_prime, B,
                            d_abstract, ea, d_engine_in_b);
}

namespace {

bool groups_isomorphic_shape(const MarkedGroup& a, const MarkedGroup& b) {
  if (a.kind() != b.kind() || a.ngens() != b.ngens()) return false;
  if (a.factors().size() != b.factors().size()) return false;
  for (std::size_t f = 0; f < a.factors().size(); ++f)
    if (!groups_isomorphic_shape(*a.factors()[f], *b.factors()[f]))
      return false;
  return true;
}

}  // namespace

SyntacticReport syntactic_checks(const SplittingDescription& desc,
                                 int probe_inner, int probe_radius,
                                 std::size_t budget) {
  SyntacticReport rep;

  if (desc.kind == SplittingDescription::Kind::hnn) {
    rep.hnn_central_match =
        desc.stable_letter_central ||
        desc.embed_a_words == desc.embed_b_words;
  } else {
    bool structural = desc.B && groups_isomorphic_shape(*desc.A, *desc.B);
    if (structural) {
      // the two embeddings must be the same words under the generator
      // renaming A -> B
      for (std::size_t i = 0;
           structural && i < desc.embed_a_words.size(); ++i) {
        Element wa = parse_word(*desc.A, desc.embed_a_words[i]);
        Element wb = parse_word(*desc.B, desc.embed_b_words[i]);
        structural = to_word(wa) == to_word(wb);
      }
    }
    // syntactic marker: the declared flag, or B's generators literally
    // renaming A's by one common suffix
    bool renamed = structural;
    if (renamed && !desc.double_flag) {
      const auto& ga = desc.A->generator_names();
      const auto& gb = desc.B->generator_names();
      std::string suffix;
      for (std::size_t i = 0; renamed && i < ga.size(); ++i) {
        if (gb[i].size() <= ga[i].size() ||
            gb[i].compare(0, ga[i].size(), ga[i]) != 0) {
          renamed = false;
          break;
        }
        std::string s = gb[i].substr(ga[i].size());
        if (i == 0)
          suffix = s;
        else if (s != suffix)
          renamed = false;
      }
    }
    rep.double_match = structural && (desc.double_flag || renamed);
    if (desc.double_flag && !structural)
      rep.notes.push_back(
          "double flag set but B is not a literal renamed copy of A");
  }

  // Delta witness for the central-stable-letter pattern: the product set
  // {1, t, t^2, ...}C spans a product of a ray with a Cayley graph of C.
  if (rep.hnn_central_match) {
    const int tmax = 3, cradius = 2;
    std::vector<Element> cgens;
    for (std::size_t i = 0; i < desc.C->ngens(); ++i) {
      cgens.push_back(desc.C->generator(i));
      cgens.push_back(inverse(desc.C->generator(i)));
    }
    BallGraph cball =
        grow_ball(ball_oracle(desc.C, cgens), "1", cradius, budget);
    BallGraph grid;
    for (int i = 0; i <= tmax; ++i)
      for (VertexId v = 0; v < cball.vertex_count(); ++v)
        grid.add_vertex("t^" + std::to_string(i) + "." + cball.label(v),
                        i + cball.depth(v));
    auto id = [&](int i, VertexId v) {
      return VertexId(std::size_t(i) * cball.vertex_count() + v);
    };
    for (int i = 0; i <= tmax; ++i) {
      for (const auto& e : cball.edges()) grid.add_edge(id(i, e.u), id(i, e.v));
      if (i < tmax)
        for (VertexId v = 0; v < cball.vertex_count(); ++v)
          grid.add_edge(id(i, v), id(i + 1, v));
    }
    grid.finalize();
    rep.delta_witness = ball_to_json(grid);
    if (desc.built) {
      rep.relation_verified_in_g = true;
      for (const auto& w : desc.embed_a_words) {
        auto lhs = desc.built->label(desc.built->normalize("t " + w));
        auto rhs = desc.built->label(desc.built->normalize(w + " t"));
        if (lhs != rhs) rep.relation_verified_in_g = false;
      }
    }
  }

  // end probes: G when engines exist, the edge group always
  if (desc.built) {
    try {
      rep.g_probe = end_probe(desc.built->cayley_oracle(), "1", probe_inner,
                              probe_radius, budget);
    } catch (const budget_error&) {
      rep.notes.push_back("G probe skipped: budget");
    }
  } else {
    rep.notes.push_back("G probe unavailable: " + desc.engine_error);
  }
  rep.g_one_ended_assumed = desc.assume_one_ended;
  if (desc.C->ngens() > 0) {
    std::vector<Element> cgens;
    for (std::size_t i = 0; i < desc.C->ngens(); ++i) {
      cgens.push_back(desc.C->generator(i));
      cgens.push_back(inverse(desc.C->generator(i)));
    }
    rep.c_probe = end_probe(ball_oracle(desc.C, cgens), "1", probe_inner,
                            probe_radius, budget);
  }

  bool matched = rep.hnn_central_match || rep.double_match;
  bool one_ended_hyp =
      (rep.g_probe && rep.g_probe->unbounded_count == 1 &&
       rep.g_probe->stable) ||
      rep.g_one_ended_assumed;
  if (matched && one_ended_hyp) {
    rep.conclusions.push_back(
        std::string("cited: the halfspaces of this splitting are one-ended "
                    "(") +
        (rep.hnn_central_match
             ? "HNN extension whose stable letter centralizes the edge group"
             : "double of a group across a subgroup") +
        ", with the whole group one-ended)");
    if (rep.c_probe && rep.c_probe->unbounded_count >= 2) {
      rep.conclusions.push_back(
          "cited: the edge group has more than one end and the halfspaces "
          "are one-ended, so H^2(G, ZG) != 0 and G is not a duality group "
          "of dimension >= 3");
    }
  }
  if (!matched)
    rep.notes.push_back("matches neither elementary construction pattern");
  return rep;
}

nlohmann::json syntactic_report_to_json(const SyntacticReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "syntactic/1";
  j["hnn_central_match"] = rep.hnn_central_match;
  j["double_match"] = rep.double_match;
  j["relation_verified_in_g"] = rep.relation_verified_in_g;
  j["has_delta_witness"] = rep.delta_witness.has_value();
  if (rep.delta_witness) j["delta_witness"] = *rep.delta_witness;
  if (rep.g_probe) j["g_probe"] = end_report_to_json(*rep.g_probe);
  j["g_one_ended_assumed"] = rep.g_one_ended_assumed;
  if (rep.c_probe) j["edge_group_probe"] = end_report_to_json(*rep.c_probe);
  j["conclusions"] = rep.conclusions;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace hsp
