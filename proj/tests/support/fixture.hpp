#pragma once

// Deterministic synthetic tweet corpus for tests: class-imbalanced like the
// real emotion data, with strong per-class vocabulary signal so small
// classifiers and keyword extraction have something to find.

#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "emoforge/corpus.hpp"
#include "emoforge/errors.hpp"
#include "emoforge/rng.hpp"

namespace emoforge::testsupport {

inline const std::array<std::vector<std::string>, kNumEmotions>& signal_words() {
    static const std::array<std::vector<std::string>, kNumEmotions> words = {{
        {"furious", "outraged", "seething", "livid", "fuming", "disgusted", "raging",
         "betrayed", "screaming", "unacceptable", "infuriating", "hostile"},
        {"delighted", "thrilled", "grinning", "celebrating", "joyful", "laughing", "dancing",
         "cheerful", "ecstatic", "beaming", "wonderful", "giddy"},
        {"hopeful", "optimistic", "brighter", "promising", "uplifting", "confident",
         "encouraged", "inspired", "determined", "possibility", "tomorrow", "believing"},
        {"heartbroken", "mourning", "weeping", "lonely", "grieving", "hopeless", "crying",
         "devastated", "miserable", "aching", "sorrowful", "empty"},
    }};
    return words;
}

inline const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> words = {
        "the", "i", "a", "to", "so", "my", "it", "was", "is", "this", "that", "of", "and",
        "just", "when", "they", "we", "still", "about", "again", "day", "time", "people",
        "thing", "week", "night", "really", "them", "all", "with"};
    return words;
}

inline std::string fixture_tweet(Emotion e, Rng& rng) {
    const auto& signal = signal_words()[static_cast<int>(e)];
    const auto& filler = filler_words();
    std::vector<std::string> words;
    if (rng.below(4) == 0) words.push_back("@user" + std::to_string(rng.below(50)));
    const int n_signal = 3 + static_cast<int>(rng.below(3));
    const int n_filler = 4 + static_cast<int>(rng.below(5));
    for (int i = 0; i < n_signal; ++i) words.push_back(signal[rng.below(signal.size())]);
    for (int i = 0; i < n_filler; ++i) words.push_back(filler[rng.below(filler.size())]);
    rng.shuffle(words);
    if (rng.below(3) == 0) words.push_back("#" + signal[rng.below(signal.size())]);
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) text += ' ';
        text += words[i];
    }
    if (rng.below(4) == 0) text += "!!";
    return text;
}

inline Emotion fixture_label(Rng& rng) {
    // roughly the real data's mix: 42% anger, 27% joy, 9% optimism, 22% sadness
    const double u = rng.unit();
    if (u < 0.42) return Emotion::anger;
    if (u < 0.69) return Emotion::joy;
    if (u < 0.78) return Emotion::optimism;
    return Emotion::sadness;
}

inline Corpus fixture_corpus(int n, std::uint64_t seed) {
    Rng rng(seed);
    Corpus corpus;
    for (int i = 0; i < n; ++i) {
        Emotion e = fixture_label(rng);
        corpus.add({i, fixture_tweet(e, rng), e, Origin::real});
    }
    return corpus;
}

struct FixtureFiles {
    std::string text_path;
    std::string labels_path;
};

inline FixtureFiles write_fixture_files(const std::string& dir, int n, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    FixtureFiles files{dir + "/train_text.txt", dir + "/train_labels.txt"};
    Corpus corpus = fixture_corpus(n, seed);
    std::ofstream text(files.text_path), labels(files.labels_path);
    for (const auto& s : corpus.samples()) {
        text << s.text << "\n";
        labels << static_cast<int>(s.label) << "\n";
    }
    return files;
}

inline std::string temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("emoforge_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace emoforge::testsupport
