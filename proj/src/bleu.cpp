#include "patbitext/bleu.hpp"

#include <algorithm>
#include <cmath>

namespace patbitext::align {

namespace {

// Size of the multiset intersection of the n-grams of a and b, i.e. the sum of
// clipped candidate n-gram counts.
template <class T>
std::size_t clipped_matches(const std::vector<T>& a, const std::vector<T>& b, std::size_t n) {
  auto starts = [n](const std::vector<T>& v) {
    std::vector<std::size_t> idx(v.size() + 1 - n);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&v, n](std::size_t x, std::size_t y) {
      return std::lexicographical_compare(v.begin() + x, v.begin() + x + n, v.begin() + y,
                                          v.begin() + y + n);
    });
    return idx;
  };
  const auto ia = starts(a);
  const auto ib = starts(b);
  std::size_t matches = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  while (x < ia.size() && y < ib.size()) {
    const auto ab = a.begin() + ia[x];
    const auto bb = b.begin() + ib[y];
    if (std::lexicographical_compare(ab, ab + n, bb, bb + n)) {
      ++x;
    } else if (std::lexicographical_compare(bb, bb + n, ab, ab + n)) {
      ++y;
    } else {
      ++matches;
      ++x;
      ++y;
    }
  }
  return matches;
}

template <class T>
double bleu(const std::vector<T>& cand, const std::vector<T>& ref, int max_n, Smoothing smoothing) {
  if (cand.empty() || ref.empty() || max_n < 1) return 0.0;
  double product = 1.0;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n); ++n) {
    const std::size_t total = cand.size() >= n ? cand.size() + 1 - n : 0;
    const std::size_t matches = (total > 0 && ref.size() >= n) ? clipped_matches(cand, ref, n) : 0;
    double p;
    if (n >= 2 && smoothing == Smoothing::AddOne) {
      p = static_cast<double>(matches + 1) / static_cast<double>(total + 1);
    } else {
      p = total == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(total);
    }
    if (p == 0.0) return 0.0;
    product *= p;
  }
  const double ratio = static_cast<double>(ref.size()) / static_cast<double>(cand.size());
  const double bp = std::exp(std::min(0.0, 1.0 - ratio));
  const double score = std::pow(product, 1.0 / max_n) * bp;
  return std::clamp(score, 0.0, 1.0);
}

}  // namespace

double sentence_bleu(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, int max_n, Smoothing smoothing) {
  return bleu(candidate, reference, max_n, smoothing);
}

double sentence_bleu_ids(const std::vector<int>& candidate, const std::vector<int>& reference,
                         int max_n, Smoothing smoothing) {
  return bleu(candidate, reference, max_n, smoothing);
}

}  // namespace patbitext::align
