// SPDX-License-Identifier: Apache-2.0
#include "svagen/answers.hpp"

#include "svagen/gateway.hpp"

#include <set>
#include <vector>

namespace svagen::llm {

using nlohmann::ordered_json;

namespace {

struct Mismatch {
    std::string message;
};

std::string index_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

bool is_blank(const ordered_json& v) {
    return v.is_null() || (v.is_string() && v.get<std::string>().empty());
}

std::string string_field(const ordered_json& obj, const std::string& key,
                         const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_string())
        throw Mismatch{path + "." + key + ": must be a string"};
    return v.get<std::string>();
}

// required=false fields may be absent or empty; required ones must be
// non-empty strings
void check_fields(const ordered_json& obj, const std::string& path,
                  const std::vector<std::pair<std::string, bool>>& fields) {
    if (!obj.is_object())
        throw Mismatch{path + ": must be an object"};
    std::set<std::string> known;
    for (const auto& [name, required] : fields) {
        known.insert(name);
        if (required) {
            if (!obj.contains(name) || is_blank(obj.at(name)))
                throw Mismatch{path + "." + name + ": required field is missing or empty"};
        }
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw Mismatch{path + "." + it.key() + ": unknown field"};
    }
}

ordered_json as_list(const ordered_json& doc) {
    if (doc.is_array())
        return doc;
    if (doc.is_object()) { // single-object answers normalize to a list
        ordered_json arr = ordered_json::array();
        arr.push_back(doc);
        return arr;
    }
    throw Mismatch{"$: answer must be a JSON array or object"};
}

ordered_json normalize_question_a(const ordered_json& doc) {
    ordered_json fsms = ordered_json::array();
    ordered_json list = as_list(doc);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& fsm = list[i];
        std::string path = index_path("", i);
        check_fields(fsm, path, {{"states", false}, {"transitions", false}, {"outputs", false}});
        ordered_json out;
        out["states"] = ordered_json::array();
        if (fsm.contains("states")) {
            if (!fsm["states"].is_array())
                throw Mismatch{path + ".states: must be an array of strings"};
            for (const auto& s : fsm["states"])
                if (!is_blank(s))
                    out["states"].push_back(s.get<std::string>());
        }
        out["transitions"] = ordered_json::array();
        if (fsm.contains("transitions")) {
            if (!fsm["transitions"].is_array())
                throw Mismatch{path + ".transitions: must be an array"};
            for (std::size_t j = 0; j < fsm["transitions"].size(); ++j) {
                const auto& tr = fsm["transitions"][j];
                std::string tpath = index_path(path + ".transitions", j);
                check_fields(tr, tpath,
                             {{"current_state", true},
                              {"conditions", true},
                              {"next_state_condition_true", true},
                              {"next_state_condition_false", false}});
                ordered_json t;
                t["current_state"] = string_field(tr, "current_state", tpath);
                t["conditions"] = string_field(tr, "conditions", tpath);
                t["next_state_condition_true"] = string_field(tr, "next_state_condition_true", tpath);
                if (tr.contains("next_state_condition_false") &&
                    !is_blank(tr["next_state_condition_false"]))
                    t["next_state_condition_false"] =
                        string_field(tr, "next_state_condition_false", tpath);
                out["transitions"].push_back(std::move(t));
            }
        }
        out["outputs"] = ordered_json::array();
        if (fsm.contains("outputs")) {
            if (!fsm["outputs"].is_array())
                throw Mismatch{path + ".outputs: must be an array"};
            for (std::size_t j = 0; j < fsm["outputs"].size(); ++j) {
                const auto& o = fsm["outputs"][j];
                std::string opath = index_path(path + ".outputs", j);
                check_fields(o, opath,
                             {{"current_state", true},
                              {"output_name", true},
                              {"conditions", false},
                              {"output_value_condition_true", true},
                              {"output_value_condition_false", false}});
                ordered_json t;
                t["current_state"] = string_field(o, "current_state", opath);
                t["output_name"] = string_field(o, "output_name", opath);
                if (o.contains("conditions") && !is_blank(o["conditions"]))
                    t["conditions"] = string_field(o, "conditions", opath);
                t["output_value_condition_true"] =
                    string_field(o, "output_value_condition_true", opath);
                if (o.contains("output_value_condition_false") &&
                    !is_blank(o["output_value_condition_false"]))
                    t["output_value_condition_false"] =
                        string_field(o, "output_value_condition_false", opath);
                out["outputs"].push_back(std::move(t));
            }
        }
        fsms.push_back(std::move(out));
    }
    return fsms;
}

ordered_json normalize_question_b(const ordered_json& doc) {
    ordered_json conditionals = ordered_json::array();
    ordered_json list = as_list(doc);
    for (std::size_t i = 0; i < list.size(); ++i) {
        std::string path = index_path("", i);
        check_fields(list[i], path, {{"antecedent", true}, {"consequent", true}});
        ordered_json c;
        c["antecedent"] = string_field(list[i], "antecedent", path);
        c["consequent"] = string_field(list[i], "consequent", path);
        conditionals.push_back(std::move(c));
    }
    return conditionals;
}

ordered_json normalize_question_c(const ordered_json& doc) {
    ordered_json variables = ordered_json::array();
    ordered_json list = as_list(doc);
    for (std::size_t i = 0; i < list.size(); ++i) {
        std::string path = index_path("", i);
        check_fields(list[i], path, {{"variable_name", true}, {"condition_list", false}});
        ordered_json v;
        v["variable_name"] = string_field(list[i], "variable_name", path);
        v["condition_list"] = ordered_json::array();
        if (list[i].contains("condition_list")) {
            if (!list[i]["condition_list"].is_array())
                throw Mismatch{path + ".condition_list: must be an array"};
            for (std::size_t j = 0; j < list[i]["condition_list"].size(); ++j) {
                const auto& entry = list[i]["condition_list"][j];
                std::string epath = index_path(path + ".condition_list", j);
                check_fields(entry, epath, {{"condition", false}, {"range_or_value", false}});
                // an entry with no range carries no checkable fact; drop it
                if (!entry.contains("range_or_value") || is_blank(entry["range_or_value"]))
                    continue;
                ordered_json e;
                if (entry.contains("condition") && !is_blank(entry["condition"]))
                    e["condition"] = string_field(entry, "condition", epath);
                e["range_or_value"] = string_field(entry, "range_or_value", epath);
                v["condition_list"].push_back(std::move(e));
            }
        }
        variables.push_back(std::move(v));
    }
    return variables;
}

// Finds the JSON payload inside surrounding prose: the first [ or { through
// the matching end of document.
std::string extract_payload(const std::string& text) {
    std::string stripped = strip_code_fences(text);
    ordered_json direct = ordered_json::parse(stripped, nullptr, false);
    if (!direct.is_discarded())
        return stripped;
    std::size_t first = stripped.find_first_of("[{");
    if (first == std::string::npos)
        return stripped;
    char open = stripped[first];
    char close = open == '[' ? ']' : '}';
    std::size_t last = stripped.rfind(close);
    if (last == std::string::npos || last < first)
        return stripped;
    return stripped.substr(first, last - first + 1);
}

} // namespace

ValidationResult validate_json_response(const std::string& schema_id, const std::string& text) {
    ValidationResult result;
    std::string payload = extract_payload(text);
    ordered_json doc = ordered_json::parse(payload, nullptr, false);
    if (doc.is_discarded()) {
        result.error = "answer is not parseable JSON";
        return result;
    }
    try {
        if (schema_id == "question_a")
            result.value = normalize_question_a(doc);
        else if (schema_id == "question_b")
            result.value = normalize_question_b(doc);
        else if (schema_id == "question_c")
            result.value = normalize_question_c(doc);
        else
            result.error = "unknown schema id " + schema_id;
    } catch (const Mismatch& m) {
        result.error = "schema mismatch at " + m.message;
    } catch (const nlohmann::json::exception& e) {
        result.error = std::string("schema mismatch: ") + e.what();
    }
    return result;
}

} // namespace svagen::llm
