#pragma once

#include <cassert>
#include <string>

#include "retlc/errors.hpp"

namespace retlc {

// A transition label: either a visible action name or the hidden action tau.
// Visible names are nonempty and never equal to the reserved spelling "tau".
class ActionLabel {
public:
    ActionLabel() = default; // tau

    static ActionLabel tau() { return ActionLabel(); }

    static ActionLabel visible(std::string name) {
        if (name.empty())
            throw Error("visible action name must be nonempty");
        if (name == "tau")
            throw Error("'tau' is reserved for the hidden action");
        ActionLabel a;
        a.name_ = std::move(name);
        return a;
    }

    // Parses the file spelling: "tau" or a visible name.
    static ActionLabel from_string(const std::string& s) {
        return s == "tau" ? tau() : visible(s);
    }

    bool is_tau() const { return name_.empty(); }
    bool is_visible() const { return !name_.empty(); }

    // Only valid for visible labels.
    const std::string& name() const {
        assert(is_visible());
        return name_;
    }

    std::string to_string() const { return is_tau() ? "tau" : name_; }

    friend bool operator==(const ActionLabel& a, const ActionLabel& b) { return a.name_ == b.name_; }
    friend bool operator!=(const ActionLabel& a, const ActionLabel& b) { return !(a == b); }
    friend bool operator<(const ActionLabel& a, const ActionLabel& b) { return a.name_ < b.name_; }

private:
    std::string name_; // empty <=> tau
};

} // namespace retlc
