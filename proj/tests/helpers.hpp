#pragma once

#include "majdyn/dynamics.hpp"
#include "majdyn/profile_io.hpp"

#include <initializer_list>
#include <string_view>

namespace testing_helpers {

using namespace majdyn;

inline DominanceTable table(int m, std::string_view pairs)
{
    DominanceTable t(m);
    for (Pair p : parse_pair_list(pairs, default_labels(m)))
        t.set(p.first, p.second);
    return t;
}

inline Preference pref(int m, std::string_view pairs)
{
    return Preference::from_relation(table(m, pairs));
}

inline Profile profile(int m, std::initializer_list<std::string_view> agents)
{
    std::vector<Preference> prefs;
    for (std::string_view a : agents)
        prefs.push_back(pref(m, a));
    return Profile(m, std::move(prefs));
}

inline UpdateOrder order(int m, std::string_view pairs)
{
    return complete_order(m, parse_pair_list(pairs, default_labels(m)));
}

inline constexpr Alternative A = alt(0), B = alt(1), C = alt(2), D = alt(3);

} // namespace testing_helpers
