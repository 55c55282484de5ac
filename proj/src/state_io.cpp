#include "qmask/state_io.hpp"

#include "qmask/errors.hpp"

namespace qmask {

nlohmann::ordered_json state_to_json(const SparseState& state) {
    nlohmann::ordered_json j;
    j["dims"] = state.dims();
    auto amps = nlohmann::ordered_json::array();
    for (const auto& e : state.entries()) {
        nlohmann::ordered_json a;
        std::vector<int> idx1(e.idx.size());
        for (std::size_t p = 0; p < e.idx.size(); ++p) idx1[p] = e.idx[p] + 1;
        a["idx"] = idx1;
        a["re"] = e.amp.real();
        a["im"] = e.amp.imag();
        amps.push_back(std::move(a));
    }
    j["amps"] = std::move(amps);
    return j;
}

SparseState state_from_json(const nlohmann::json& j) {
    try {
        std::vector<int> dims = j.at("dims").get<std::vector<int>>();
        std::vector<AmpEntry> entries;
        for (const auto& a : j.at("amps")) {
            MultiIndex idx = a.at("idx").get<std::vector<int>>();
            for (int& d : idx) d -= 1; // file digits are 1-based
            entries.push_back({std::move(idx),
                               Complex{a.at("re").get<double>(), a.at("im").get<double>()}});
        }
        return SparseState(std::move(dims), std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("state dump: ") + e.what());
    }
}

} // namespace qmask
