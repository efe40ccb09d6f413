#include "k3auto/refdata.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "k3auto/reference_data_embedded.hpp"

namespace k3auto {

std::vector<std::string> validate_reference_data(const nlohmann::json& data) {
    std::vector<std::string> problems;
    auto need = [&](const nlohmann::json& obj, const char* key, const std::string& where) {
        if (!obj.contains(key)) problems.push_back(where + ": missing field '" + key + "'");
    };
    need(data, "schema_version", "root");
    need(data, "tables", "root");
    need(data, "families", "root");
    need(data, "facts", "root");
    if (!data.contains("tables")) return problems;
    for (const auto& t : data["tables"]) {
        std::string id = t.value("id", "<missing id>");
        need(t, "id", "table");
        need(t, "caption", "table " + id);
        need(t, "columns", "table " + id);
        need(t, "rows", "table " + id);
        if (t.contains("rows") && t.contains("columns")) {
            std::size_t width = t["columns"].size();
            for (const auto& r : t["rows"])
                if (r.size() != width)
                    problems.push_back("table " + id + ": row width != column count");
        }
    }
    if (data.contains("facts"))
        for (const auto& f : data["facts"]) {
            need(f, "kind", "fact");
            if (!f.contains("citation") || f["citation"].get<std::string>().empty())
                problems.push_back("fact of kind '" + f.value("kind", "?") +
                                   "': missing citation");
        }
    if (data.contains("families"))
        for (const auto& f : data["families"]) {
            need(f, "id", "family");
            need(f, "weierstrass", "family " + f.value("id", "?"));
        }
    return problems;
}

const nlohmann::json& reference_data() {
    static nlohmann::json data;
    static std::once_flag once;
    std::call_once(once, [] {
        data = nlohmann::json::parse(detail::embedded_reference_data);
        auto problems = validate_reference_data(data);
        if (!problems.empty()) {
            std::ostringstream os;
            os << "reference data failed schema validation:";
            for (const auto& p : problems) os << "\n  " << p;
            throw std::runtime_error(os.str());
        }
    });
    return data;
}

const nlohmann::json& reference_table(const std::string& id) {
    for (const auto& t : reference_data()["tables"])
        if (t["id"] == id) return t;
    std::ostringstream os;
    os << "unknown table id '" << id << "'; known ids:";
    for (const auto& known : reference_table_ids()) os << " " << known;
    throw std::out_of_range(os.str());
}

std::vector<std::string> reference_table_ids() {
    std::vector<std::string> ids;
    for (const auto& t : reference_data()["tables"]) ids.push_back(t["id"].get<std::string>());
    return ids;
}

bool refdata_genus_order_excluded(long g, long ord, std::string* citation) {
    for (const auto& f : reference_data()["facts"]) {
        if (f["kind"] != "genus_order_impossible") continue;
        if (f["genus"].get<long>() == g && f["order"].get<long>() == ord) {
            if (citation) *citation = f["citation"].get<std::string>();
            return true;
        }
    }
    return false;
}

std::optional<InvolutionRows> refdata_involution_rows(long chi) {
    for (const auto& f : reference_data()["facts"]) {
        if (f["kind"] != "involution_profiles") continue;
        if (f["chi"].get<long>() == chi) {
            InvolutionRows rows;
            rows.citation = f["citation"].get<std::string>();
            for (const auto& r : f["rows"])
                rows.rows.emplace_back(r[0].get<int>(), r[1].get<int>());
            return rows;
        }
    }
    return std::nullopt;
}

}  // namespace k3auto
