#pragma once

#include <string>
#include <vector>

namespace quadtile {

/// Named pass/fail items collected by the verification routines.
struct CheckReport {
    struct Item {
        std::string name;
        bool passed = true;
        std::string detail;
    };

    std::vector<Item> items;

    void add(std::string name, bool passed, std::string detail = {}) {
        items.push_back({std::move(name), passed, std::move(detail)});
    }
    void merge(const CheckReport& other) { items.insert(items.end(), other.items.begin(), other.items.end()); }

    bool ok() const {
        for (const auto& it : items)
            if (!it.passed) return false;
        return true;
    }
    std::vector<Item> failures() const {
        std::vector<Item> out;
        for (const auto& it : items)
            if (!it.passed) out.push_back(it);
        return out;
    }
    bool failed(const std::string& name) const {
        for (const auto& it : items)
            if (!it.passed && it.name == name) return true;
        return false;
    }
};

}  // namespace quadtile
