// SPDX-License-Identifier: Apache-2.0
#include "svagen/dataset.hpp"

#include "svagen/astgen.hpp"
#include "svagen/fnv.hpp"
#include "svagen/parser.hpp"
#include "svagen/printer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace svagen::dataset {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Mining
// ---------------------------------------------------------------------------

namespace {

struct CommentBlock {
    int first_line = 0; // 1-based
    int last_line = 0;
    std::string text;
};

std::string clean_comment_line(std::string line) {
    auto strip = [&](const char* prefix) {
        std::size_t at = line.find(prefix);
        if (at != std::string::npos)
            line = line.substr(at + std::strlen(prefix));
    };
    strip("//");
    // block comment borders
    std::size_t open = line.find("/*");
    if (open != std::string::npos)
        line = line.substr(open + 2);
    std::size_t close = line.find("*/");
    if (close != std::string::npos)
        line = line.substr(0, close);
    // leading asterisk decoration
    std::size_t begin = line.find_first_not_of(" \t*");
    std::size_t end = line.find_last_not_of(" \t\r");
    if (begin == std::string::npos || end == std::string::npos || end < begin)
        return {};
    return line.substr(begin, end - begin + 1);
}

bool is_comment_line(const std::string& line, bool& in_block) {
    std::string trimmed = line;
    std::size_t begin = trimmed.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return false;
    trimmed = trimmed.substr(begin);
    if (in_block) {
        if (trimmed.find("*/") != std::string::npos)
            in_block = false;
        return true;
    }
    if (trimmed.rfind("//", 0) == 0)
        return true;
    if (trimmed.rfind("/*", 0) == 0) {
        if (trimmed.find("*/") == std::string::npos)
            in_block = true;
        return true;
    }
    return false;
}

// assert statements: `assert property (...)...;` or `assert(...);`, possibly
// spanning lines
std::optional<std::pair<std::string, int>> find_assert(const std::vector<std::string>& lines,
                                                       std::size_t& cursor) {
    for (std::size_t i = cursor; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        std::size_t at = line.find("assert");
        if (at == std::string::npos)
            continue;
        bool left_ok = at == 0 || !(std::isalnum(static_cast<unsigned char>(line[at - 1])) ||
                                    line[at - 1] == '_');
        std::size_t after = at + 6;
        std::size_t next = line.find_first_not_of(" \t", after);
        bool looks_like_stmt =
            left_ok && next != std::string::npos &&
            (line[next] == '(' || line.compare(next, 8, "property") == 0);
        if (!looks_like_stmt)
            continue;
        // collect through the terminating semicolon at paren depth 0
        std::string stmt;
        int depth = 0;
        for (std::size_t j = i; j < lines.size(); ++j) {
            const std::string& part = lines[j];
            std::size_t begin = (j == i) ? at : 0;
            for (std::size_t k = begin; k < part.size(); ++k) {
                char c = part[k];
                stmt += c;
                if (c == '(')
                    ++depth;
                else if (c == ')')
                    --depth;
                else if (c == ';' && depth <= 0) {
                    cursor = j + 1;
                    return std::make_pair(stmt, static_cast<int>(i + 1));
                }
            }
            stmt += ' ';
            if (j - i > 8) // runaway statement; treat the fragment as the statement
                break;
        }
        cursor = i + 1;
        return std::make_pair(stmt, static_cast<int>(i + 1));
    }
    cursor = lines.size();
    return std::nullopt;
}

} // namespace

MineResult mine_pairs(const std::string& corpus_dir) {
    MineResult result;
    std::vector<fs::path> files;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(corpus_dir, ec), end; it != end && !ec;
         it.increment(ec)) {
        if (!it->is_regular_file())
            continue;
        auto ext = it->path().extension();
        if (ext == ".v" || ext == ".sv" || ext == ".svh")
            files.push_back(it->path());
    }
    if (ec)
        result.warnings.push_back(corpus_dir + ": " + ec.message());
    std::sort(files.begin(), files.end()); // deterministic order

    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) {
            result.warnings.push_back(file.string() + ": unreadable, skipped");
            continue;
        }
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line))
            lines.push_back(line);

        // identify comment blocks once per file
        std::vector<CommentBlock> blocks;
        bool in_block = false;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            bool was_in_block = in_block;
            if (is_comment_line(lines[i], in_block)) {
                std::string cleaned = clean_comment_line(lines[i]);
                if (!was_in_block && (blocks.empty() || blocks.back().last_line != static_cast<int>(i))) {
                    blocks.push_back({static_cast<int>(i + 1), static_cast<int>(i + 1), cleaned});
                } else {
                    blocks.back().last_line = static_cast<int>(i + 1);
                    if (!cleaned.empty()) {
                        if (!blocks.back().text.empty())
                            blocks.back().text += ' ';
                        blocks.back().text += cleaned;
                    }
                }
            }
        }

        std::size_t cursor = 0;
        while (true) {
            auto found = find_assert(lines, cursor);
            if (!found)
                break;
            auto [stmt, lineno] = *found;
            // nearest comment block ending within 2 lines above the statement
            const CommentBlock* best = nullptr;
            for (const auto& b : blocks) {
                if (b.last_line < lineno && lineno - b.last_line <= 2)
                    if (!best || b.last_line > best->last_line)
                        best = &b;
            }
            if (!best || best->text.empty())
                continue; // no well-defined comment: dropped
            PairCandidate cand;
            cand.comment_text = best->text;
            cand.assertion_text = stmt;
            cand.source_path = file.string();
            cand.source_line = lineno;
            cand.origin = PairOrigin::Mined;
            cand.parseable = sva::parse_assertion(stmt).ok();
            result.candidates.push_back(std::move(cand));
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty())
        tokens.push_back(cur);
    return tokens;
}

std::map<std::string, std::vector<double>> load_external_vectors(const std::string& path) {
    std::map<std::string, std::vector<double>> table;
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open embedding vectors file " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string token;
        if (!(row >> token))
            continue;
        std::vector<double> vec;
        double v;
        while (row >> v)
            vec.push_back(v);
        if (!vec.empty())
            table[token] = std::move(vec);
    }
    return table;
}

void l2_normalize(std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v)
        norm += x * x;
    if (norm <= 0.0)
        return;
    norm = std::sqrt(norm);
    for (double& x : v)
        x /= norm;
}

} // namespace

std::vector<double> embed(const std::string& text, const EmbedderConfig& config) {
    std::vector<std::string> tokens = tokenize(text);
    if (config.kind == EmbedderConfig::Kind::External) {
        static std::map<std::string, std::map<std::string, std::vector<double>>> cache;
        auto& table = cache.emplace(config.vectors_path,
                                    std::map<std::string, std::vector<double>>{})
                          .first->second;
        if (table.empty())
            table = load_external_vectors(config.vectors_path);
        std::vector<double> acc;
        for (const auto& t : tokens) {
            auto it = table.find(t);
            if (it == table.end())
                continue;
            if (acc.empty())
                acc.assign(it->second.size(), 0.0);
            for (std::size_t i = 0; i < acc.size() && i < it->second.size(); ++i)
                acc[i] += it->second[i];
        }
        if (acc.empty())
            acc.assign(static_cast<std::size_t>(config.dimension), 0.0);
        l2_normalize(acc);
        return acc;
    }

    std::vector<double> vec(static_cast<std::size_t>(config.dimension), 0.0);
    for (const auto& t : tokens) {
        uint64_t h = fnv1a(t, 0xcbf29ce484222325ULL ^ config.seed);
        std::size_t bucket = static_cast<std::size_t>(h % static_cast<uint64_t>(config.dimension));
        double sign = ((h >> 32) & 1) ? 1.0 : -1.0;
        vec[bucket] += sign;
    }
    l2_normalize(vec);
    return vec;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        dot += a[i] * b[i];
    for (double x : a)
        na += x * x;
    for (double x : b)
        nb += x * x;
    if (na <= 0.0 || nb <= 0.0)
        return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

DatasetManifest filter_pairs(const std::vector<PairCandidate>& candidates,
                             const EmbedderConfig& config, double threshold) {
    DatasetManifest manifest;
    manifest.threshold = threshold;
    manifest.embedder = config;
    for (PairCandidate cand : candidates) {
        if (cand.origin == PairOrigin::Synthetic) { // synthetic pairs bypass the filter
            cand.similarity = 1.0;
            manifest.kept_pairs.push_back(std::move(cand));
            ++manifest.synthetic_count;
            continue;
        }
        std::vector<double> vc = embed(cand.comment_text, config);
        std::vector<double> va = embed(cand.assertion_text, config);
        auto is_zero = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
        };
        if (is_zero(vc) || is_zero(va)) {
            cand.zero_vector = true;
            cand.similarity = 0.0;
            manifest.dropped_pairs.push_back(std::move(cand));
            continue;
        }
        cand.similarity = cosine(vc, va);
        if (cand.similarity >= threshold) {
            manifest.kept_pairs.push_back(std::move(cand));
            ++manifest.mined_count;
        } else {
            manifest.dropped_pairs.push_back(std::move(cand));
        }
    }
    return manifest;
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

namespace {

// English phrase per boolean operator, composed bottom-up
std::string phrase_bool(const sva::BoolExpr& e) {
    using namespace sva;
    if (const auto* id = std::get_if<Identifier>(&e.node)) {
        std::string name = id->name;
        if (const auto* bit = std::get_if<BitSelect>(&id->select))
            name += " bit " + std::to_string(bit->index);
        else if (const auto* part = std::get_if<PartSelect>(&id->select))
            name += " bits " + std::to_string(part->msb) + " down to " + std::to_string(part->lsb);
        return name;
    }
    if (const auto* lit = std::get_if<NumericLiteral>(&e.node))
        return "the value " + print_expr(e) + (lit->width ? "" : "");
    if (const auto* u = std::get_if<Unary>(&e.node)) {
        switch (u->op) {
        case UnaryOp::LogicNot: return "not " + phrase_bool(*u->operand);
        case UnaryOp::BitNot: return "the bitwise complement of " + phrase_bool(*u->operand);
        case UnaryOp::Minus: return "the negation of " + phrase_bool(*u->operand);
        }
    }
    if (const auto* b = std::get_if<Binary>(&e.node)) {
        static const std::map<BinaryOp, std::string> glue = {
            {BinaryOp::LogicAnd, " and "},
            {BinaryOp::LogicOr, " or "},
            {BinaryOp::BitAnd, " bitwise-and "},
            {BinaryOp::BitOr, " bitwise-or "},
            {BinaryOp::BitXor, " xor "},
            {BinaryOp::Eq, " equals "},
            {BinaryOp::Ne, " differs from "},
            {BinaryOp::Lt, " is less than "},
            {BinaryOp::Le, " is at most "},
            {BinaryOp::Gt, " is greater than "},
            {BinaryOp::Ge, " is at least "},
            {BinaryOp::Add, " plus "},
            {BinaryOp::Sub, " minus "},
        };
        return phrase_bool(*b->lhs) + glue.at(b->op) + phrase_bool(*b->rhs);
    }
    if (const auto* p = std::get_if<Paren>(&e.node))
        return phrase_bool(*p->inner);
    const auto& call = std::get<SystemCall>(e.node);
    switch (call.func) {
    case SysFunc::Past:
        return phrase_bool(*call.arg) + " " + std::to_string(call.cycles.value_or(1)) +
               " cycle(s) ago";
    case SysFunc::Rose: return phrase_bool(*call.arg) + " just rose";
    case SysFunc::Fell: return phrase_bool(*call.arg) + " just fell";
    case SysFunc::Stable: return phrase_bool(*call.arg) + " stayed stable";
    }
    return {};
}

std::string phrase_seq(const sva::SequenceExpr& seq) {
    using namespace sva;
    if (const auto* b = std::get_if<SeqBool>(&seq.node))
        return phrase_bool(*b->expr);
    const auto& d = std::get<SeqDelay>(seq.node);
    std::string delay = d.max_cycles
                            ? std::to_string(d.min_cycles) + " to " + std::to_string(*d.max_cycles)
                            : std::to_string(d.min_cycles);
    return phrase_seq(*d.lhs) + ", then " + delay + " cycle(s) later " + phrase_seq(*d.rhs);
}

std::string phrase_prop(const sva::PropertyExpr& prop) {
    using namespace sva;
    if (const auto* s = std::get_if<PropSeq>(&prop.node))
        return phrase_seq(*s->seq) + " must hold";
    if (const auto* i = std::get_if<PropImplication>(&prop.node)) {
        std::string when = i->kind == ImplKind::Overlapped ? "in the same cycle"
                                                           : "in the next cycle";
        return "whenever " + phrase_seq(*i->antecedent) + " holds, " +
               phrase_prop(*i->consequent) + " " + when;
    }
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return "it must never happen that " + phrase_prop(*n->inner);
    const auto& d = std::get<PropDisableIff>(prop.node);
    return phrase_prop(*d.body) + ", unless " + phrase_bool(*d.condition) + " aborts the check";
}

} // namespace

std::vector<PairCandidate> synthesize_pairs(std::size_t n, uint64_t seed,
                                            const std::vector<std::string>& signal_vocab) {
    sva::AstGenerator::Options options;
    options.seed = seed;
    options.max_depth = 3;
    options.vocab = signal_vocab;
    sva::AstGenerator generator(options);

    std::vector<PairCandidate> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        sva::AssertionDecl decl = generator.next_assertion();
        PairCandidate cand;
        cand.assertion_text = sva::pretty_print(decl);
        std::string comment = phrase_prop(*decl.property);
        if (!comment.empty())
            comment[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(comment[0])));
        cand.comment_text = comment + ".";
        cand.origin = PairOrigin::Synthetic;
        cand.parseable = true;
        cand.source_line = static_cast<int>(i);
        pairs.push_back(std::move(cand));
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

std::size_t emit_finetune_jsonl(const DatasetManifest& manifest,
                                const std::string& system_message, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write dataset file " + out_path);
    std::size_t count = 0;
    for (const auto& pair : manifest.kept_pairs) {
        if (pair.origin == PairOrigin::Mined && !pair.parseable)
            continue; // unparseable mined pairs are recorded but never emitted
        ordered_json line;
        line["messages"] = ordered_json::array();
        line["messages"].push_back({{"role", "system"}, {"content", system_message}});
        line["messages"].push_back({{"role", "user"}, {"content", pair.comment_text}});
        line["messages"].push_back({{"role", "assistant"}, {"content", pair.assertion_text}});
        out << line.dump() << '\n';
        ++count;
    }
    return count;
}

namespace {

ordered_json pair_to_json(const PairCandidate& p) {
    ordered_json j;
    j["comment"] = p.comment_text;
    j["assertion"] = p.assertion_text;
    j["origin"] = p.origin == PairOrigin::Mined ? "mined" : "synthetic";
    if (p.origin == PairOrigin::Mined) {
        j["source_path"] = p.source_path;
        j["source_line"] = p.source_line;
    }
    j["similarity"] = p.similarity;
    j["parseable"] = p.parseable;
    if (p.zero_vector)
        j["zero_vector"] = true;
    return j;
}

PairCandidate pair_from_json(const ordered_json& j) {
    PairCandidate p;
    p.comment_text = j.value("comment", "");
    p.assertion_text = j.value("assertion", "");
    p.origin = j.value("origin", "mined") == "mined" ? PairOrigin::Mined : PairOrigin::Synthetic;
    p.source_path = j.value("source_path", "");
    p.source_line = j.value("source_line", 0);
    p.similarity = j.value("similarity", 0.0);
    p.parseable = j.value("parseable", false);
    p.zero_vector = j.value("zero_vector", false);
    return p;
}

} // namespace

ordered_json DatasetManifest::to_json() const {
    ordered_json doc;
    doc["threshold"] = threshold;
    doc["mined_count"] = mined_count;
    doc["synthetic_count"] = synthetic_count;
    doc["system_message_path"] = system_message_path;
    doc["embedder"] = ordered_json{
        {"kind", embedder.kind == EmbedderConfig::Kind::HashedBow ? "hashed_bow" : "external"},
        {"dimension", embedder.dimension},
        {"seed", embedder.seed},
        {"vectors_path", embedder.vectors_path},
        // lowercasing is the only text normalization applied before embedding
        {"normalization", "lowercase"},
    };
    doc["kept"] = ordered_json::array();
    for (const auto& p : kept_pairs)
        doc["kept"].push_back(pair_to_json(p));
    doc["dropped"] = ordered_json::array();
    for (const auto& p : dropped_pairs)
        doc["dropped"].push_back(pair_to_json(p));
    return doc;
}

DatasetManifest DatasetManifest::from_json(const ordered_json& doc) {
    DatasetManifest m;
    m.threshold = doc.value("threshold", 0.6);
    m.mined_count = doc.value("mined_count", std::size_t{0});
    m.synthetic_count = doc.value("synthetic_count", std::size_t{0});
    m.system_message_path = doc.value("system_message_path", "");
    if (doc.contains("embedder")) {
        const auto& e = doc["embedder"];
        m.embedder.kind = e.value("kind", "hashed_bow") == "external"
                              ? EmbedderConfig::Kind::External
                              : EmbedderConfig::Kind::HashedBow;
        m.embedder.dimension = e.value("dimension", 128);
        m.embedder.seed = e.value("seed", uint64_t{0});
        m.embedder.vectors_path = e.value("vectors_path", "");
    }
    for (const auto& p : doc.value("kept", ordered_json::array()))
        m.kept_pairs.push_back(pair_from_json(p));
    for (const auto& p : doc.value("dropped", ordered_json::array()))
        m.dropped_pairs.push_back(pair_from_json(p));
    return m;
}

ordered_json FineTuneJobDescriptor::to_json() const {
    ordered_json doc;
    doc["base_model"] = base_model;
    doc["epochs"] = epochs;
    doc["dataset_path"] = dataset_path;
    doc["system_message_path"] = system_message_path;
    return doc;
}

} // namespace svagen::dataset
