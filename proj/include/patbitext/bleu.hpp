#pragma once

#include <string>
#include <vector>

namespace patbitext::align {

enum class Smoothing {
  None,
  AddOne,  // (matches + 1) / (candidates + 1) for n >= 2
};

// Sentence-level BLEU in [0, 1]: geometric mean of clipped n-gram precisions
// for n = 1..max_n times the brevity penalty exp(min(0, 1 - |ref| / |cand|)).
// Unigram precision is never smoothed. Empty candidate or reference gives 0.
double sentence_bleu(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, int max_n = 2,
                     Smoothing smoothing = Smoothing::AddOne);

}  // namespace patbitext::align

namespace patbitext::align {

// Same score over interned tokens.
double sentence_bleu_ids(const std::vector<int>& candidate, const std::vector<int>& reference,
                         int max_n = 2, Smoothing smoothing = Smoothing::AddOne);

}  // namespace patbitext::align
