#include "patbitext/align.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "patbitext/error.hpp"
#include "patbitext/text.hpp"

namespace patbitext::align {

std::string_view method_name(Method method) { return method == Method::Dict ? "dict" : "mt"; }

std::optional<Method> method_from_name(std::string_view name) {
  if (name == "dict") return Method::Dict;
  if (name == "mt") return Method::Mt;
  return std::nullopt;
}

void validate_links(const std::vector<AlignmentLink>& links, std::optional<int> n_ja,
                    std::optional<int> n_en) {
  auto check_side = [](const std::vector<int>& side, std::optional<int> n, const char* name) {
    if (side.empty() || side.size() > kMaxBeadSide) {
      throw InvariantViolation(std::string("link has ") + std::to_string(side.size()) + " " +
                               name + " sentences");
    }
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (side[i] < 1 || (n && side[i] > *n)) {
        throw InvariantViolation(std::string(name) + " sentence number " +
                                 std::to_string(side[i]) + " out of range");
      }
      if (i > 0 && side[i] <= side[i - 1]) {
        throw InvariantViolation(std::string(name) + " sentence numbers not ascending");
      }
    }
  };
  for (std::size_t i = 0; i < links.size(); ++i) {
    check_side(links[i].ja_sents, n_ja, "ja");
    check_side(links[i].en_sents, n_en, "en");
    if (!(links[i].score >= 0.0 && links[i].score <= 1.0)) {
      throw InvariantViolation("link score outside [0, 1]");
    }
    if (i == 0) continue;
    const auto& prev = links[i - 1];
    if (prev.ja_sents.back() >= links[i].ja_sents.front() ||
        prev.en_sents.back() >= links[i].en_sents.front()) {
      throw InvariantViolation("links " + std::to_string(i) + " and " + std::to_string(i + 1) +
                               " overlap or cross");
    }
  }
}

void ScoreMatrix::set(int i, int j, double value) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw InvariantViolation("score matrix entry outside [0, 1]");
  }
  cells_[std::size_t(i) * cols_ + j] = value;
}

std::vector<Bead> default_beads() { return {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 0}, {0, 1}}; }

std::vector<Bead> parse_beads(std::string_view spec) {
  std::vector<Bead> out;
  for (auto item : text::split(spec, ',')) {
    item = text::trim(item);
    const auto dash = item.find('-');
    Bead bead;
    auto parse_side = [&](std::string_view s, int& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && ptr == s.data() + s.size() && v >= 0 &&
             v <= static_cast<int>(kMaxBeadSide);
    };
    if (dash == std::string_view::npos || !parse_side(item.substr(0, dash), bead.ja) ||
        !parse_side(item.substr(dash + 1), bead.en) || (bead.ja == 0 && bead.en == 0)) {
      throw InvalidSpec("bad bead '" + std::string(item) + "'");
    }
    if (std::find(out.begin(), out.end(), bead) == out.end()) out.push_back(bead);
  }
  if (out.empty()) throw InvalidSpec("empty bead list");
  return out;
}

std::string beads_to_string(const std::vector<Bead>& beads) {
  std::vector<std::string> parts;
  for (const auto& b : beads) parts.push_back(std::to_string(b.ja) + "-" + std::to_string(b.en));
  return text::join(parts, ",");
}

void AlignParams::validate() const {
  if (beads.empty()) throw InvalidSpec("empty bead list");
  for (const auto& b : beads) {
    if (b.ja < 0 || b.en < 0 || b.ja > int(kMaxBeadSide) || b.en > int(kMaxBeadSide) ||
        (b.ja == 0 && b.en == 0)) {
      throw InvalidSpec("bad bead " + std::to_string(b.ja) + "-" + std::to_string(b.en));
    }
  }
  auto non_negative = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidSpec(std::string(name) + " must be >= 0");
  };
  non_negative(skip_penalty, "skip_penalty");
  non_negative(merge_penalty, "merge_penalty");
  non_negative(anchor_threshold, "anchor_threshold");
  if (max_gap_merge < 1 || max_gap_merge > int(kMaxBeadSide)) {
    throw InvalidSpec("max_gap_merge must be in 1..3");
  }
  if (bleu_order < 1 || bleu_order > 9) throw InvalidSpec("bleu_order must be in 1..9");
}

AlignParams AlignParams::from_config(const ConfigFile& config, AlignParams base) {
  auto key = [&config](const std::string& name) {
    return config.contains("align." + name) ? "align." + name : name;
  };
  if (auto v = config.get(key("beads"))) base.beads = parse_beads(*v);
  if (auto v = config.get_double(key("skip_penalty"))) base.skip_penalty = *v;
  if (auto v = config.get_double(key("merge_penalty"))) base.merge_penalty = *v;
  if (auto v = config.get_double(key("anchor_threshold"))) base.anchor_threshold = *v;
  if (auto v = config.get_int(key("max_gap_merge"))) base.max_gap_merge = static_cast<int>(*v);
  if (auto v = config.get_int(key("bleu_order"))) base.bleu_order = static_cast<int>(*v);
  base.validate();
  return base;
}

AlignParams AlignParams::from_config(const ConfigFile& config) {
  return from_config(config, AlignParams{});
}

double dict_similarity(const std::vector<std::string>& ja_tokens,
                       const std::vector<std::string>& en_tokens,
                       const BilingualLexicon& lexicon) {
  const std::size_t total = ja_tokens.size() + en_tokens.size();
  if (total == 0) return 0.0;
  std::vector<char> matched(en_tokens.size(), 0);
  std::size_t m = 0;
  for (const auto& ja : ja_tokens) {
    if (!lexicon.contains_key(ja)) continue;
    for (std::size_t p = 0; p < en_tokens.size(); ++p) {
      if (!matched[p] && lexicon.links(ja, en_tokens[p])) {
        matched[p] = 1;
        ++m;
        break;
      }
    }
  }
  return 2.0 * static_cast<double>(m) / static_cast<double>(total);
}

BeadPath align_beads(const BeadScoreFn& sim, int n_ja, int n_en, const AlignParams& params,
                     Method method) {
  const int cols = n_en + 1;
  const std::size_t cells = std::size_t(n_ja + 1) * cols;
  std::vector<double> best(cells, 0.0);
  std::vector<double> bead_sim(cells, 0.0);
  std::vector<int> choice(cells, -1);
  std::vector<char> reach(cells, 0);
  reach[0] = 1;
  for (int i = 0; i <= n_ja; ++i) {
    for (int j = 0; j <= n_en; ++j) {
      if (i == 0 && j == 0) continue;
      const std::size_t here = std::size_t(i) * cols + j;
      for (std::size_t b = 0; b < params.beads.size(); ++b) {
        const Bead& bead = params.beads[b];
        const int pi = i - bead.ja;
        const int pj = j - bead.en;
        if (pi < 0 || pj < 0) continue;
        const std::size_t prev = std::size_t(pi) * cols + pj;
        if (!reach[prev]) continue;
        double s = 0.0;
        double value;
        if (bead.is_skip()) {
          value = -params.skip_penalty;
        } else {
          const auto score = sim(pi, bead.ja, pj, bead.en);
          if (!score) continue;
          s = *score;
          value = bead.ja + bead.en > 2 ? s - params.merge_penalty : s;
        }
        const double total = best[prev] + value;
        if (!reach[here] || total > best[here]) {
          reach[here] = 1;
          best[here] = total;
          choice[here] = static_cast<int>(b);
          bead_sim[here] = s;
        }
      }
    }
  }

  BeadPath out;
  const std::size_t end = cells - 1;
  if (!reach[end]) return out;
  out.reachable = true;
  out.objective = best[end];
  int i = n_ja;
  int j = n_en;
  while (i > 0 || j > 0) {
    const std::size_t here = std::size_t(i) * cols + j;
    const Bead& bead = params.beads[static_cast<std::size_t>(choice[here])];
    if (!bead.is_skip()) {
      AlignmentLink link;
      for (int k = i - bead.ja; k < i; ++k) link.ja_sents.push_back(k + 1);
      for (int l = j - bead.en; l < j; ++l) link.en_sents.push_back(l + 1);
      link.score = bead_sim[here];
      link.method = method;
      out.links.push_back(std::move(link));
    }
    i -= bead.ja;
    j -= bead.en;
  }
  std::reverse(out.links.begin(), out.links.end());
  return out;
}

namespace {

class Interner {
 public:
  int id(const std::string& token) {
    auto [it, inserted] = ids_.try_emplace(token, static_cast<int>(ids_.size()));
    return it->second;
  }
  std::optional<int> find(const std::string& token) const {
    auto it = ids_.find(token);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<std::string, int> ids_;
};

}  // namespace

std::vector<AlignmentLink> align_dict(const std::vector<std::vector<std::string>>& ja_sentences,
                                      const std::vector<std::vector<std::string>>& en_sentences,
                                      const BilingualLexicon& lexicon, const AlignParams& params) {
  params.validate();
  Interner interner;
  std::vector<std::vector<int>> en(en_sentences.size());
  for (std::size_t s = 0; s < en_sentences.size(); ++s) {
    for (const auto& token : en_sentences[s]) en[s].push_back(interner.id(text::to_lower_ascii(token)));
  }
  // Each Japanese token becomes the sorted ids of its senses that occur on the
  // English side.
  std::vector<std::vector<std::vector<int>>> ja(ja_sentences.size());
  for (std::size_t s = 0; s < ja_sentences.size(); ++s) {
    for (const auto& token : ja_sentences[s]) {
      std::vector<int> senses;
      if (const auto* english = lexicon.lookup(token)) {
        for (const auto& e : *english) {
          if (auto id = interner.find(e)) senses.push_back(*id);
        }
        std::sort(senses.begin(), senses.end());
        senses.erase(std::unique(senses.begin(), senses.end()), senses.end());
      }
      ja[s].push_back(std::move(senses));
    }
  }

  std::vector<int> en_buf;
  std::vector<char> matched;
  auto sim = [&](int i, int k, int j, int l) -> std::optional<double> {
    en_buf.clear();
    for (int s = j; s < j + l; ++s) en_buf.insert(en_buf.end(), en[s].begin(), en[s].end());
    std::size_t ja_len = 0;
    for (int s = i; s < i + k; ++s) ja_len += ja[s].size();
    const std::size_t total = ja_len + en_buf.size();
    if (total == 0) return 0.0;
    matched.assign(en_buf.size(), 0);
    std::size_t m = 0;
    for (int s = i; s < i + k; ++s) {
      for (const auto& senses : ja[s]) {
        if (senses.empty()) continue;
        for (std::size_t p = 0; p < en_buf.size(); ++p) {
          if (!matched[p] && std::binary_search(senses.begin(), senses.end(), en_buf[p])) {
            matched[p] = 1;
            ++m;
            break;
          }
        }
      }
    }
    return 2.0 * static_cast<double>(m) / static_cast<double>(total);
  };
  return align_beads(sim, static_cast<int>(ja.size()), static_cast<int>(en.size()), params,
                     Method::Dict)
      .links;
}

std::vector<std::pair<int, int>> select_anchors(const ScoreMatrix& scores, double threshold) {
  const int n = scores.rows();
  const int m = scores.cols();
  const int cols = m + 1;
  std::vector<double> best(std::size_t(n + 1) * cols, 0.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      double v = std::max(best[std::size_t(i - 1) * cols + j], best[std::size_t(i) * cols + j - 1]);
      const double s = scores.at(i - 1, j - 1);
      if (s > threshold) v = std::max(v, best[std::size_t(i - 1) * cols + j - 1] + s);
      best[std::size_t(i) * cols + j] = v;
    }
  }
  std::vector<std::pair<int, int>> out;
  int i = n;
  int j = m;
  while (i > 0 && j > 0) {
    const double here = best[std::size_t(i) * cols + j];
    const double s = scores.at(i - 1, j - 1);
    if (s > threshold && here == best[std::size_t(i - 1) * cols + j - 1] + s) {
      out.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (here == best[std::size_t(i - 1) * cols + j]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

struct Block {
  int ja_begin;
  int ja_end;  // exclusive
  int en_begin;
  int en_end;
  double score;
};

AlignmentLink to_link(const Block& b) {
  AlignmentLink link;
  for (int i = b.ja_begin; i < b.ja_end; ++i) link.ja_sents.push_back(i + 1);
  for (int j = b.en_begin; j < b.en_end; ++j) link.en_sents.push_back(j + 1);
  link.score = b.score;
  link.method = Method::Mt;
  return link;
}

}  // namespace

std::vector<AlignmentLink> align_mt_scored(const MergedScoreFn& score, int n_ja, int n_en,
                                           const AlignParams& params) {
  params.validate();
  const double t = params.anchor_threshold;
  const int g = params.max_gap_merge;

  ScoreMatrix matrix(n_ja, n_en);
  for (int i = 0; i < n_ja; ++i) {
    for (int j = 0; j < n_en; ++j) matrix.set(i, j, score(i, 1, j, 1));
  }

  std::vector<Block> anchors;
  std::vector<char> ja_taken(std::size_t(n_ja), 0);
  std::vector<char> en_taken(std::size_t(n_en), 0);
  for (auto [i, j] : select_anchors(matrix, t)) {
    anchors.push_back({i, i + 1, j, j + 1, matrix.at(i, j)});
    ja_taken[std::size_t(i)] = 1;
    en_taken[std::size_t(j)] = 1;
  }

  // Absorb adjacent unaligned sentences into an anchor when the merged block
  // scores strictly higher.
  auto free_range = [](const std::vector<char>& taken, int begin, int end) {
    if (begin < 0 || end > static_cast<int>(taken.size())) return false;
    for (int x = begin; x < end; ++x) {
      if (taken[std::size_t(x)]) return false;
    }
    return true;
  };
  for (auto& a : anchors) {
    Block best = a;
    for (int before_ja = 0; before_ja < g; ++before_ja) {
      for (int after_ja = 0; before_ja + after_ja < g; ++after_ja) {
        if (!free_range(ja_taken, a.ja_begin - before_ja, a.ja_begin) ||
            !free_range(ja_taken, a.ja_end, a.ja_end + after_ja)) {
          continue;
        }
        for (int before_en = 0; before_en < g; ++before_en) {
          for (int after_en = 0; before_en + after_en < g; ++after_en) {
            if (before_ja + after_ja + before_en + after_en == 0) continue;
            if (!free_range(en_taken, a.en_begin - before_en, a.en_begin) ||
                !free_range(en_taken, a.en_end, a.en_end + after_en)) {
              continue;
            }
            Block c{a.ja_begin - before_ja, a.ja_end + after_ja, a.en_begin - before_en,
                    a.en_end + after_en, 0.0};
            c.score = score(c.ja_begin, c.ja_end - c.ja_begin, c.en_begin, c.en_end - c.en_begin);
            if (c.score > best.score) best = c;
          }
        }
      }
    }
    for (int x = best.ja_begin; x < best.ja_end; ++x) ja_taken[std::size_t(x)] = 1;
    for (int x = best.en_begin; x < best.en_end; ++x) en_taken[std::size_t(x)] = 1;
    a = best;
  }

  AlignParams gap_params = params;
  gap_params.beads.clear();
  for (int k = 1; k <= g; ++k) {
    for (int l = 1; l <= g; ++l) gap_params.beads.push_back({k, l});
  }
  gap_params.beads.push_back({1, 0});
  gap_params.beads.push_back({0, 1});
  gap_params.skip_penalty = 0.0;
  gap_params.merge_penalty = 0.0;

  std::vector<AlignmentLink> out;
  auto fill_gap = [&](int ja_begin, int ja_end, int en_begin, int en_end) {
    if (ja_end <= ja_begin || en_end <= en_begin) return;
    auto sim = [&](int i, int k, int j, int l) -> std::optional<double> {
      const double s = score(ja_begin + i, k, en_begin + j, l);
      if (s > t) return s;
      return std::nullopt;
    };
    auto path = align_beads(sim, ja_end - ja_begin, en_end - en_begin, gap_params, Method::Mt);
    for (auto& link : path.links) {
      for (auto& x : link.ja_sents) x += ja_begin;
      for (auto& x : link.en_sents) x += en_begin;
      out.push_back(std::move(link));
    }
  };
  int ja_cursor = 0;
  int en_cursor = 0;
  for (const auto& a : anchors) {
    fill_gap(ja_cursor, a.ja_begin, en_cursor, a.en_begin);
    out.push_back(to_link(a));
    ja_cursor = a.ja_end;
    en_cursor = a.en_end;
  }
  fill_gap(ja_cursor, n_ja, en_cursor, n_en);
  validate_links(out, n_ja, n_en);
  return out;
}

std::vector<AlignmentLink> align_mt(const std::vector<std::vector<std::string>>& ja_translations,
                                    std::size_t n_ja,
                                    const std::vector<std::vector<std::string>>& en_sentences,
                                    const AlignParams& params) {
  if (ja_translations.size() != n_ja) {
    throw LengthMismatch("got " + std::to_string(ja_translations.size()) +
                         " translations for " + std::to_string(n_ja) + " Japanese sentences");
  }
  Interner interner;
  auto intern = [&interner](const std::vector<std::vector<std::string>>& sentences) {
    std::vector<std::vector<int>> out(sentences.size());
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      for (const auto& token : sentences[s]) out[s].push_back(interner.id(token));
    }
    return out;
  };
  const auto tr = intern(ja_translations);
  const auto en = intern(en_sentences);
  std::vector<int> cand;
  std::vector<int> ref;
  auto merged = [&](int i, int k, int j, int l) {
    cand.clear();
    ref.clear();
    for (int s = i; s < i + k; ++s) cand.insert(cand.end(), tr[s].begin(), tr[s].end());
    for (int s = j; s < j + l; ++s) ref.insert(ref.end(), en[s].begin(), en[s].end());
    return sentence_bleu_ids(cand, ref, params.bleu_order, Smoothing::AddOne);
  };
  return align_mt_scored(merged, static_cast<int>(n_ja), static_cast<int>(en.size()), params);
}

}  // namespace patbitext::align
