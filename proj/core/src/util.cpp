#include "emoforge/util.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "emoforge/errors.hpp"
#include "emoforge/hash.hpp"

namespace emoforge {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config: return "Config";
        case ErrorKind::EmptyFile: return "EmptyFile";
        case ErrorKind::LineCountMismatch: return "LineCountMismatch";
        case ErrorKind::InvalidLabel: return "InvalidLabel";
        case ErrorKind::EmptyText: return "EmptyText";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::EmptyCorpus: return "EmptyCorpus";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::NoTargetSamples: return "NoTargetSamples";
        case ErrorKind::NoComplementSamples: return "NoComplementSamples";
        case ErrorKind::MissingClass: return "MissingClass";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::MissingCover: return "MissingCover";
        case ErrorKind::TooManyFeatures: return "TooManyFeatures";
        case ErrorKind::VocabularyMismatch: return "VocabularyMismatch";
        case ErrorKind::EmptyAfterFilter: return "EmptyAfterFilter";
        case ErrorKind::CountMismatch: return "CountMismatch";
        case ErrorKind::Unparseable: return "Unparseable";
        case ErrorKind::Backend: return "Backend";
        case ErrorKind::DuplicateSaturation: return "DuplicateSaturation";
        case ErrorKind::BothEmpty: return "BothEmpty";
        case ErrorKind::NoNgrams: return "NoNgrams";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::PoolExhausted: return "PoolExhausted";
        case ErrorKind::Io: return "Io";
    }
    return "Error";
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.is_open(), ErrorKind::Io, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.is_open(), ErrorKind::Io, "cannot write " + path);
    out << content;
}

std::string format_double(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
    return buf;
}

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace emoforge
