#include "emoforge/linguistics.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"
#include "emoforge/util.hpp"

namespace emoforge {

namespace detail {
const std::map<std::string, PosTag>& pos_lexicon();
}

const char* pos_tag_name(PosTag tag) {
    switch (tag) {
        case PosTag::NOUN: return "NOUN";
        case PosTag::VERB: return "VERB";
        case PosTag::ADJ: return "ADJ";
        case PosTag::ADV: return "ADV";
        case PosTag::PRON: return "PRON";
        case PosTag::AUX: return "AUX";
        case PosTag::DET: return "DET";
        case PosTag::ADP: return "ADP";
        case PosTag::PART: return "PART";
        case PosTag::NUM: return "NUM";
        case PosTag::PROPN: return "PROPN";
        case PosTag::INTJ: return "INTJ";
        case PosTag::CONJ: return "CONJ";
        case PosTag::PUNCT: return "PUNCT";
        case PosTag::SYM: return "SYM";
        case PosTag::X: return "X";
    }
    return "X";
}

namespace {

bool ends_with(const std::string& s, const char* suffix) {
    const std::size_t n = std::string::traits_type::length(suffix);
    return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

PosTag tag_one(const std::string& token) {
    if (token.empty()) return PosTag::X;

    std::string lower;
    lower.reserve(token.size());
    bool has_alnum = false, has_digit = false, has_upper_first = false, has_high_byte = false;
    for (std::size_t i = 0; i < token.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(token[i]);
        if (c >= 0x80) has_high_byte = true;
        if (std::isalnum(c)) has_alnum = true;
        if (std::isdigit(c)) has_digit = true;
        if (i == 0 && std::isupper(c)) has_upper_first = true;
        lower.push_back(static_cast<char>(std::tolower(c)));
    }
    if (!has_alnum) return has_high_byte ? PosTag::X : PosTag::PUNCT;
    if (has_digit && std::isdigit(static_cast<unsigned char>(token[0]))) return PosTag::NUM;

    const auto& lexicon = detail::pos_lexicon();
    auto it = lexicon.find(lower);
    if (it != lexicon.end()) return it->second;
    if (has_upper_first) return PosTag::PROPN;

    if (lower.size() >= 4) {
        if (ends_with(lower, "ly")) return PosTag::ADV;
        if (ends_with(lower, "ing") || ends_with(lower, "ed")) return PosTag::VERB;
        if (ends_with(lower, "ize") || ends_with(lower, "ise")) return PosTag::VERB;
        if (ends_with(lower, "ness") || ends_with(lower, "tion") || ends_with(lower, "sion") ||
            ends_with(lower, "ment") || ends_with(lower, "ship") || ends_with(lower, "hood") ||
            ends_with(lower, "ity")) {
            return PosTag::NOUN;
        }
        if (ends_with(lower, "ful") || ends_with(lower, "ous") || ends_with(lower, "ive") ||
            ends_with(lower, "less") || ends_with(lower, "able") || ends_with(lower, "ible") ||
            ends_with(lower, "ish") || ends_with(lower, "est")) {
            return PosTag::ADJ;
        }
    }
    return PosTag::NOUN;
}

}  // namespace

std::vector<PosTag> pos_tag(const std::vector<std::string>& tokens) {
    std::vector<PosTag> tags;
    tags.reserve(tokens.size());
    for (const auto& t : tokens) tags.push_back(tag_one(t));
    return tags;
}

double ttr(const std::vector<std::string>& tokens) {
    require(!tokens.empty(), ErrorKind::EmptyInput, "ttr of empty token list");
    std::set<std::string> types(tokens.begin(), tokens.end());
    return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    require(!a.empty() || !b.empty(), ErrorKind::BothEmpty, "jaccard of two empty sets");
    std::size_t intersection = 0;
    for (const auto& t : a) {
        if (b.count(t)) ++intersection;
    }
    const std::size_t unioned = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unioned);
}

std::int64_t NgramDistribution::total() const {
    std::int64_t t = 0;
    for (const auto& [k, v] : counts) t += v;
    return t;
}

NgramDistribution ngram_distribution(const std::vector<std::vector<PosTag>>& docs, int n) {
    require(n == 2 || n == 3, ErrorKind::ArityMismatch, "only bigrams and trigrams supported");
    NgramDistribution dist;
    dist.n = n;
    for (const auto& doc : docs) {
        if (static_cast<int>(doc.size()) < n) continue;  // too short to contribute
        for (std::size_t i = 0; i + n <= doc.size(); ++i) {
            std::vector<PosTag> gram(doc.begin() + i, doc.begin() + i + n);
            ++dist.counts[gram];
        }
    }
    const std::int64_t total = dist.total();
    require(total > 0, ErrorKind::NoNgrams, "no document long enough for " + std::to_string(n) +
                                                "-grams");
    for (const auto& [gram, count] : dist.counts) {
        dist.probabilities[gram] = static_cast<double>(count) / static_cast<double>(total);
    }
    return dist;
}

double jsd(const NgramDistribution& p, const NgramDistribution& q) {
    require(p.n == q.n, ErrorKind::ArityMismatch, "comparing distributions of different n");

    auto kl_against_mixture = [&](const std::map<std::vector<PosTag>, double>& a,
                                  const std::map<std::vector<PosTag>, double>& b) {
        // D_KL(A || M) with M = (A+B)/2; terms with a=0 contribute 0
        double sum = 0.0;
        for (const auto& [gram, pa] : a) {
            if (pa <= 0.0) continue;
            auto it = b.find(gram);
            const double pb = it == b.end() ? 0.0 : it->second;
            sum += pa * std::log2(pa / (0.5 * (pa + pb)));
        }
        return sum;
    };
    return 0.5 * kl_against_mixture(p.probabilities, q.probabilities) +
           0.5 * kl_against_mixture(q.probabilities, p.probabilities);
}

namespace {

std::string ngram_label(const std::vector<PosTag>& gram) {
    std::string label;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (i) label += '-';
        label += pos_tag_name(gram[i]);
    }
    return label;
}

struct CorpusStats {
    std::vector<std::string> all_tokens;
    std::map<Emotion, std::set<std::string>> words_by_emotion;
    std::set<std::string> words;
    std::vector<std::vector<PosTag>> tagged_docs;
};

CorpusStats analyze(const Corpus& corpus, const PreprocessConfig& config) {
    CorpusStats stats;
    for (const auto& sample : corpus.samples()) {
        auto tokens = preprocess(sample.text, config);
        stats.tagged_docs.push_back(pos_tag(tokens));
        for (const auto& t : tokens) {
            stats.words.insert(t);
            stats.words_by_emotion[sample.label].insert(t);
            stats.all_tokens.push_back(t);
        }
    }
    return stats;
}

double probability_of(const NgramDistribution& dist, const std::vector<PosTag>& gram) {
    auto it = dist.probabilities.find(gram);
    return it == dist.probabilities.end() ? 0.0 : it->second;
}

}  // namespace

DiversityReport diversity_report(const Corpus& real, const Corpus& shap_synth,
                                 const Corpus& naive_synth, const PreprocessConfig& config,
                                 int top_k) {
    DiversityReport report;
    CorpusStats real_stats = analyze(real, config);
    CorpusStats shap_stats = analyze(shap_synth, config);
    CorpusStats naive_stats = analyze(naive_synth, config);

    report.ttr_per_dataset["real"] = ttr(real_stats.all_tokens);
    report.ttr_per_dataset["shap"] = ttr(shap_stats.all_tokens);
    report.ttr_per_dataset["naive"] = ttr(naive_stats.all_tokens);

    for (Emotion e : all_emotions()) {
        auto rit = real_stats.words_by_emotion.find(e);
        if (rit == real_stats.words_by_emotion.end()) continue;
        auto sit = shap_stats.words_by_emotion.find(e);
        auto nit = naive_stats.words_by_emotion.find(e);
        if (sit != shap_stats.words_by_emotion.end()) {
            report.jaccard_per_emotion[{e, "shap"}] = jaccard(rit->second, sit->second);
        }
        if (nit != naive_stats.words_by_emotion.end()) {
            report.jaccard_per_emotion[{e, "naive"}] = jaccard(rit->second, nit->second);
        }
    }

    for (int n : {2, 3}) {
        auto real_dist = ngram_distribution(real_stats.tagged_docs, n);
        auto shap_dist = ngram_distribution(shap_stats.tagged_docs, n);
        auto naive_dist = ngram_distribution(naive_stats.tagged_docs, n);
        auto& jsd_map = n == 2 ? report.jsd_bigram : report.jsd_trigram;
        jsd_map["shap"] = jsd(real_dist, shap_dist);
        jsd_map["naive"] = jsd(real_dist, naive_dist);

        std::vector<std::pair<std::vector<PosTag>, double>> ranked(
            real_dist.probabilities.begin(), real_dist.probabilities.end());
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        auto& rows = n == 2 ? report.top_bigrams : report.top_trigrams;
        for (int i = 0; i < std::min<int>(top_k, static_cast<int>(ranked.size())); ++i) {
            NgramRow row;
            row.ngram = ngram_label(ranked[i].first);
            row.real = ranked[i].second;
            row.shap = probability_of(shap_dist, ranked[i].first);
            row.naive = probability_of(naive_dist, ranked[i].first);
            rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string DiversityReport::to_json_string() const {
    nlohmann::json j;
    j["ttr"] = ttr_per_dataset;
    nlohmann::json jac = nlohmann::json::object();
    for (const auto& [key, value] : jaccard_per_emotion) {
        jac[std::string(emotion_name(key.first)) + "/" + key.second] = value;
    }
    j["jaccard"] = std::move(jac);
    j["jsd_bigram"] = jsd_bigram;
    j["jsd_trigram"] = jsd_trigram;
    auto rows_json = [](const std::vector<NgramRow>& rows) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            arr.push_back({{"ngram", r.ngram}, {"real", r.real}, {"shap", r.shap},
                           {"naive", r.naive}});
        }
        return arr;
    };
    j["top_bigrams"] = rows_json(top_bigrams);
    j["top_trigrams"] = rows_json(top_trigrams);
    return j.dump(2);
}

std::string DiversityReport::to_csv() const {
    std::string csv = "metric,key,variant,value\n";
    for (const auto& [name, value] : ttr_per_dataset) {
        csv += "ttr,," + name + "," + format_double(value) + "\n";
    }
    for (const auto& [key, value] : jaccard_per_emotion) {
        csv += std::string("jaccard,") + emotion_name(key.first) + "," + key.second + "," +
               format_double(value) + "\n";
    }
    for (const auto& [variant, value] : jsd_bigram) {
        csv += "jsd_bigram,," + variant + "," + format_double(value) + "\n";
    }
    for (const auto& [variant, value] : jsd_trigram) {
        csv += "jsd_trigram,," + variant + "," + format_double(value) + "\n";
    }
    return csv;
}

}  // namespace emoforge
