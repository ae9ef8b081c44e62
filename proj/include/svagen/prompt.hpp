// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/gateway.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace svagen::llm {

struct PromptError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Versioned prompt templates loaded from a directory of .txt files.
///
/// Template format: `@@role` lines open a message section (system, user or
/// assistant); `<<name>>` placeholders are substituted from the bindings.
/// `<<system_sva>>` is bound implicitly to the contents of system_sva.txt,
/// the assertion-writing reference sheet shared with the fine-tuning dataset.
class PromptLibrary {
public:
    explicit PromptLibrary(std::string prompts_dir);

    std::vector<ChatMessage> render(const std::string& template_id,
                                    const std::map<std::string, std::string>& bindings) const;

    /// Content hash used to pin template versions in run manifests.
    std::string version(const std::string& template_id) const;
    const std::string& system_message() const { return system_sva_; }
    std::string system_message_path() const;

    static const std::vector<std::string>& known_templates();

private:
    std::string dir_;
    std::string system_sva_;
    std::string load(const std::string& template_id) const;
};

} // namespace svagen::llm
