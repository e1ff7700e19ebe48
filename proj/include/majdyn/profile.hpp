#pragma once

#include "majdyn/preference.hpp"

#include <string>
#include <vector>

namespace majdyn {

// n agents' preferences over a shared set of m alternatives.
class Profile {
public:
    Profile(int m, std::vector<Preference> prefs);
    static Profile empty(int n, int m);
    static Profile replicate(const Preference& pref, int n);

    int n() const { return static_cast<int>(prefs_.size()); }
    int m() const { return m_; }
    const Preference& operator[](int i) const { return prefs_[static_cast<std::size_t>(i)]; }
    Preference& operator[](int i) { return prefs_[static_cast<std::size_t>(i)]; }
    std::span<const Preference> agents() const { return prefs_; }
    std::span<Preference> agents() { return prefs_; }
    auto begin() const { return prefs_.begin(); }
    auto end() const { return prefs_.end(); }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    int m_;
    std::vector<Preference> prefs_;
};

// Number of agents strictly preferring a to b.
int support(const Profile& profile, Alternative a, Alternative b);

// Compared unordered pairs over all agents divided by n * m(m-1)/2.
double completeness_level(const Profile& profile);

// Default display labels "a", "b", ... by index.
std::vector<std::string> default_labels(int m);

} // namespace majdyn
