// SPDX-License-Identifier: Apache-2.0
#include "svagen/prompt.hpp"

#include "svagen/fnv.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace svagen::llm {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw PromptError("cannot open prompt template " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string substitute(const std::string& text,
                       const std::map<std::string, std::string>& bindings,
                       const std::string& template_id) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t open = text.find("<<", i);
        if (open == std::string::npos) {
            out.append(text, i, std::string::npos);
            break;
        }
        std::size_t close = text.find(">>", open + 2);
        if (close == std::string::npos) {
            out.append(text, i, std::string::npos);
            break;
        }
        out.append(text, i, open - i);
        std::string name = text.substr(open + 2, close - open - 2);
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw PromptError("template " + template_id + " has no binding for placeholder <<" +
                              name + ">>");
        out += it->second;
        i = close + 2;
    }
    return out;
}

} // namespace

PromptLibrary::PromptLibrary(std::string prompts_dir) : dir_(std::move(prompts_dir)) {
    system_sva_ = read_file(fs::path(dir_) / "system_sva.txt");
    while (!system_sva_.empty() && (system_sva_.back() == '\n' || system_sva_.back() == '\r'))
        system_sva_.pop_back();
}

const std::vector<std::string>& PromptLibrary::known_templates() {
    static const std::vector<std::string> names = {
        "question_a", "question_b", "question_c", "generate", "align", "repair",
    };
    return names;
}

std::string PromptLibrary::load(const std::string& template_id) const {
    return read_file(fs::path(dir_) / (template_id + ".txt"));
}

std::string PromptLibrary::system_message_path() const {
    return (fs::path(dir_) / "system_sva.txt").string();
}

std::string PromptLibrary::version(const std::string& template_id) const {
    return to_hex(fnv1a(load(template_id)));
}

std::vector<ChatMessage> PromptLibrary::render(
    const std::string& template_id, const std::map<std::string, std::string>& bindings) const {
    std::string text = load(template_id);
    std::map<std::string, std::string> full = bindings;
    full.emplace("system_sva", system_sva_);

    std::vector<ChatMessage> messages;
    std::istringstream lines(text);
    std::string line;
    std::string role;
    std::string body;
    auto flush = [&] {
        if (role.empty())
            return;
        while (!body.empty() && (body.back() == '\n' || body.back() == '\r'))
            body.pop_back();
        std::string content = substitute(body, full, template_id);
        if (content.empty())
            throw PromptError("template " + template_id + " renders an empty " + role +
                              " message");
        messages.push_back({role, std::move(content)});
        body.clear();
    };
    while (std::getline(lines, line)) {
        if (line.rfind("@@", 0) == 0) {
            flush();
            role = line.substr(2);
            if (!role.empty() && role.back() == '\r')
                role.pop_back();
            if (role != "system" && role != "user" && role != "assistant")
                throw PromptError("template " + template_id + " names unknown role @@" + role);
            continue;
        }
        if (role.empty()) {
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue; // leading blank lines before the first section
            throw PromptError("template " + template_id + " has content before the first @@role");
        }
        body += line;
        body += '\n';
    }
    flush();
    if (messages.empty())
        throw PromptError("template " + template_id + " defines no messages");
    return messages;
}

} // namespace svagen::llm
