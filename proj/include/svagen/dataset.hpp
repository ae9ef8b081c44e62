// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svagen::dataset {

enum class PairOrigin { Mined, Synthetic };

struct PairCandidate {
    std::string comment_text;
    std::string assertion_text;
    std::string source_path; // empty for synthetic pairs
    int source_line = 0;     // 1-based line of the assert statement
    double similarity = 0.0; // set by the filter
    PairOrigin origin = PairOrigin::Mined;
    bool parseable = false;
    bool zero_vector = false; // embedding degenerated to the zero vector
};

struct EmbedderConfig {
    enum class Kind { HashedBow, External } kind = Kind::HashedBow;
    int dimension = 128;
    uint64_t seed = 0;
    std::string vectors_path; // External: word2vec text format (token v1 v2 ...)
};

struct DatasetManifest {
    std::vector<PairCandidate> kept_pairs;
    std::vector<PairCandidate> dropped_pairs;
    double threshold = 0.6;
    std::size_t mined_count = 0;     // kept mined pairs
    std::size_t synthetic_count = 0;
    std::string system_message_path;
    EmbedderConfig embedder;

    nlohmann::ordered_json to_json() const;
    static DatasetManifest from_json(const nlohmann::ordered_json& doc);
};

struct MineResult {
    std::vector<PairCandidate> candidates;
    std::vector<std::string> warnings; // unreadable files, etc.
};

/// Walks a local .v/.sv corpus pairing each assert statement with the
/// nearest comment block that ends within two lines above it.  Asserts
/// without such a comment are dropped.
MineResult mine_pairs(const std::string& corpus_dir);

/// Signed-hash bag-of-words embedding: lowercase, split on non-alphanumerics,
/// each token hashed to a bucket with a +/-1 sign, L2-normalized.  The
/// external kind reads fixed token vectors from a file instead.
std::vector<double> embed(const std::string& text, const EmbedderConfig& config);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

/// Keeps mined pairs whose comment/assertion cosine reaches the threshold;
/// synthetic pairs bypass the filter.  Zero-vector pairs are dropped and
/// flagged.
DatasetManifest filter_pairs(const std::vector<PairCandidate>& candidates,
                             const EmbedderConfig& config, double threshold = 0.6);

/// n generated assertion/comment pairs from the grammar-aware random
/// generator (depth <= 3); comments come from per-operator sentence
/// templates.  Deterministic for a fixed seed.
std::vector<PairCandidate> synthesize_pairs(std::size_t n, uint64_t seed,
                                            const std::vector<std::string>& signal_vocab);

/// One chat-format JSONL line per kept pair; returns the line count.
std::size_t emit_finetune_jsonl(const DatasetManifest& manifest,
                                const std::string& system_message,
                                const std::string& out_path);

/// Job metadata for the fine-tuning run this dataset feeds (the run itself
/// happens elsewhere).
struct FineTuneJobDescriptor {
    std::string base_model = "gpt-3.5-turbo";
    int epochs = 3;
    std::string dataset_path;
    std::string system_message_path;

    nlohmann::ordered_json to_json() const;
};

} // namespace svagen::dataset
