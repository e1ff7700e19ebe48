#include "majdyn/profile_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace majdyn {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Alternative lookup_label(const std::vector<std::string>& labels, std::string_view label)
{
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw ProfileFormatError("unknown alternative label '" + std::string(label) + "'");
    return alt(static_cast<int>(it - labels.begin()));
}

ProfileDocument parse_profile(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProfileFormatError(std::string("malformed profile document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("agents"))
        throw ProfileFormatError("profile document needs fields 'm' and 'agents'");

    const int m = doc.at("m").get<int>();
    if (m < 1 || m > kMaxAlternatives)
        throw ProfileFormatError("m out of range: " + std::to_string(m));

    std::vector<std::string> labels = default_labels(m);
    if (doc.contains("labels")) {
        labels = doc.at("labels").get<std::vector<std::string>>();
        if (static_cast<int>(labels.size()) != m)
            throw ProfileFormatError("expected " + std::to_string(m) + " labels");
        if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
            throw ProfileFormatError("labels must be unique");
    }

    std::vector<Preference> prefs;
    int agent = 0;
    for (const json& pairs : doc.at("agents")) {
        ++agent;
        DominanceTable rel(m);
        for (const json& p : pairs) {
            if (!p.is_array() || p.size() != 2)
                throw ProfileFormatError("agent " + std::to_string(agent) + ": pairs must be [first, second]");
            const Alternative a = lookup_label(labels, p[0].get<std::string>());
            const Alternative b = lookup_label(labels, p[1].get<std::string>());
            if (a == b)
                throw ProfileFormatError("agent " + std::to_string(agent) + ": pair repeats '" + labels[index(a)] + "'");
            rel.set(a, b);
        }
        DominanceTable closed(m);
        try {
            closed = transitive_closure(rel);
        } catch (const ClosureCreatesCycle& e) {
            throw ProfileFormatError("agent " + std::to_string(agent) + ": asymmetry violated, witness " +
                                     labels[index(e.a())] + " " + labels[index(e.b())]);
        }
        if (auto v = validate_preference(closed))
            throw ProfileFormatError("agent " + std::to_string(agent) + ": " + v->describe());
        prefs.push_back(Preference::from_relation(closed));
    }
    return {Profile(m, std::move(prefs)), std::move(labels)};
}

ProfileDocument read_profile_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ProfileFormatError("cannot open profile file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

std::string format_profile_document(const Profile& profile, const std::vector<std::string>& labels)
{
    // One agent per line.
    std::ostringstream os;
    os << "{\n  \"m\": " << profile.m() << ",\n  \"labels\": " << json(labels).dump() << ",\n  \"agents\": [";
    bool first = true;
    for (const Preference& pref : profile) {
        json pairs = json::array();
        for (Pair p : pref.table().pairs())
            pairs.push_back({labels[index(p.first)], labels[index(p.second)]});
        os << (first ? "\n    " : ",\n    ") << pairs.dump();
        first = false;
    }
    os << (first ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

std::vector<Pair> parse_pair_list(std::string_view text, const std::vector<std::string>& labels)
{
    std::vector<Pair> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view item = trim(text.substr(start, end - start));
        start = end + 1;
        if (item.empty())
            continue;
        Pair p;
        if (auto gt = item.find('>'); gt != std::string_view::npos) {
            p = {lookup_label(labels, trim(item.substr(0, gt))), lookup_label(labels, trim(item.substr(gt + 1)))};
        } else if (item.size() == 2) {
            p = {lookup_label(labels, item.substr(0, 1)), lookup_label(labels, item.substr(1, 1))};
        } else {
            throw ProfileFormatError("cannot read pair '" + std::string(item) + "'");
        }
        if (p.first == p.second)
            throw SameAlternative(p.first);
        out.push_back(p);
    }
    return out;
}

std::string format_pair(Pair p, const std::vector<std::string>& labels)
{
    const std::string& a = labels[index(p.first)];
    const std::string& b = labels[index(p.second)];
    if (a.size() == 1 && b.size() == 1)
        return a + b;
    return a + ">" + b;
}

std::string format_preference(const Preference& pref, const std::vector<std::string>& labels)
{
    const int m = pref.size();
    std::ostringstream os;
    if (pref.is_complete()) {
        std::vector<int> order(static_cast<std::size_t>(m));
        for (int a = 0; a < m; ++a)
            order[static_cast<std::size_t>(m - 1 - std::popcount(pref.dominated_by(alt(a))))] = a;
        for (int i = 0; i < m; ++i)
            os << (i ? " > " : "") << labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        return os.str();
    }
    os << '{';
    bool first = true;
    for (Pair p : pref.table().pairs()) {
        os << (first ? "" : ", ") << format_pair(p, labels);
        first = false;
    }
    os << '}';
    return os.str();
}

std::string format_outcome(ConsensusOutcome outcome, const std::vector<std::string>& labels)
{
    return outcome.has_winner() ? labels[static_cast<std::size_t>(outcome.code())] : "none";
}

} // namespace majdyn
