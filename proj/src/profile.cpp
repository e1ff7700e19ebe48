#include "majdyn/profile.hpp"

namespace majdyn {

Profile::Profile(int m, std::vector<Preference> prefs) : m_(m), prefs_(std::move(prefs))
{
    for (const Preference& p : prefs_)
        if (p.size() != m)
            throw std::invalid_argument("profile mixes alternative counts");
}

Profile Profile::empty(int n, int m)
{
    return Profile(m, std::vector<Preference>(static_cast<std::size_t>(n), Preference(m)));
}

Profile Profile::replicate(const Preference& pref, int n)
{
    return Profile(pref.size(), std::vector<Preference>(static_cast<std::size_t>(n), pref));
}

int support(const Profile& profile, Alternative a, Alternative b)
{
    if (a == b)
        throw SameAlternative(a);
    int count = 0;
    for (const Preference& p : profile)
        count += p.prefers(a, b) ? 1 : 0;
    return count;
}

double completeness_level(const Profile& profile)
{
    const int m = profile.m();
    const long long possible = static_cast<long long>(profile.n()) * m * (m - 1) / 2;
    if (possible == 0)
        return 0.0;
    long long compared = 0;
    for (const Preference& p : profile)
        compared += p.compared_pairs();
    return static_cast<double>(compared) / static_cast<double>(possible);
}

std::vector<std::string> default_labels(int m)
{
    std::vector<std::string> out;
    for (int i = 0; i < m; ++i)
        out.emplace_back(1, static_cast<char>('a' + i));
    return out;
}

} // namespace majdyn
