#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace dyext {

/// Ordered key=value record of the choices a construction made.
class Trace {
public:
    template <class T>
    void add(std::string key, const T& value) {
        std::ostringstream out;
        out << value;
        entries_.emplace_back(std::move(key), out.str());
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    /// First value recorded under `key`, or empty.
    std::string get(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key) return v;
        return {};
    }

    std::string str() const {
        std::string out;
        for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace dyext
