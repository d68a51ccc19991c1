#include "eroiplan/io.hpp"

#include "eroiplan/format.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace eroiplan {

using nlohmann::json;

namespace {

std::string join_load_issues(const std::vector<LoadIssue>& issues) {
    std::ostringstream os;
    os << "dataset load failed (" << issues.size() << " issue"
       << (issues.size() == 1 ? "" : "s") << ")";
    for (const auto& i : issues) {
        os << "\n  " << i.file;
        if (i.line > 0)
            os << ":" << i.line;
        os << ": " << i.message;
    }
    return os.str();
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct CsvRow {
    int line = 0;
    std::vector<std::string> fields;
};

struct CsvTable {
    std::string file;
    std::vector<std::string> header;
    std::vector<CsvRow> rows;

    int col(const std::string& name) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<int>(i);
        return -1;
    }
};

class Loader {
public:
    explicit Loader(const std::filesystem::path& dir) : dir_(dir) {}

    std::vector<LoadIssue> issues;

    void fail(const std::string& file, int line, const std::string& message) {
        issues.push_back({file, line, message});
    }

    // Reads a CSV with a mandatory header; '#' lines and blank lines skipped.
    std::optional<CsvTable> read_csv(const std::string& name, bool required = true) {
        const auto path = dir_ / name;
        std::ifstream in(path);
        if (!in) {
            if (required)
                fail(name, 0, "missing file");
            return std::nullopt;
        }
        CsvTable table;
        table.file = name;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            std::vector<std::string> fields;
            std::string field;
            std::istringstream ls(t);
            while (std::getline(ls, field, ','))
                fields.push_back(trim(field));
            if (!t.empty() && t.back() == ',')
                fields.push_back("");
            if (table.header.empty())
                table.header = fields;
            else
                table.rows.push_back({line_no, std::move(fields)});
        }
        if (table.header.empty()) {
            fail(name, 0, "empty file: header row required");
            return std::nullopt;
        }
        return table;
    }

    // Field access with exhaustive error reporting.
    std::optional<std::string> text(const CsvTable& t, const CsvRow& row, const std::string& col) {
        const int c = t.col(col);
        if (c < 0) {
            fail(t.file, 0, "missing column '" + col + "'");
            return std::nullopt;
        }
        if (c >= static_cast<int>(row.fields.size())) {
            fail(t.file, row.line, "truncated row: column '" + col + "' (field " +
                                       std::to_string(c + 1) + ") missing");
            return std::nullopt;
        }
        return row.fields[c];
    }

    std::optional<double> number(const CsvTable& t, const CsvRow& row, const std::string& col,
                                 bool allow_inf = false) {
        auto s = text(t, row, col);
        if (!s)
            return std::nullopt;
        if (allow_inf && (s->empty() || *s == "inf" || *s == "unbounded"))
            return kUnbounded;
        double v = 0.0;
        const char* begin = s->data();
        const char* end = begin + s->size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) {
            fail(t.file, row.line,
                 "column '" + col + "': cannot parse number from '" + *s + "'");
            return std::nullopt;
        }
        return v;
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

// Minimal key/value format with [section] headers, quoted strings, numbers
// and ["a", "b"] string arrays. Enough for categories, shares and units.
struct MetaFile {
    // section -> key -> raw scalar or array
    std::map<std::string, std::map<std::string, std::vector<std::string>>> sections;

    const std::vector<std::string>* find(const std::string& section,
                                         const std::string& key) const {
        auto s = sections.find(section);
        if (s == sections.end())
            return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }
};

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

MetaFile parse_meta(Loader& loader, const std::string& name) {
    MetaFile meta;
    std::ifstream in(loader.dir() / name);
    if (!in) {
        loader.fail(name, 0, "missing file");
        return meta;
    }
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                loader.fail(name, line_no, "malformed section header");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            loader.fail(name, line_no, "expected key = value");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        std::vector<std::string> items;
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') {
                loader.fail(name, line_no, "malformed array value");
                continue;
            }
            std::istringstream vs(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(vs, item, ','))
                if (!trim(item).empty())
                    items.push_back(unquote(trim(item)));
        } else {
            items.push_back(unquote(value));
        }
        meta.sections[section][key] = std::move(items);
    }
    return meta;
}

std::optional<double> meta_number(Loader& loader, const MetaFile& meta,
                                  const std::string& section, const std::string& key,
                                  const std::string& file) {
    const auto* v = meta.find(section, key);
    if (!v || v->empty())
        return std::nullopt;
    double out = 0.0;
    const std::string& s = (*v)[0];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        loader.fail(file, 0, "key '" + key + "': cannot parse number from '" + s + "'");
        return std::nullopt;
    }
    return out;
}

// Expands a td/h field that may be '*' into concrete indices.
std::vector<int> expand_td(Loader& loader, const CsvTable& t, const CsvRow& row,
                           const std::string& value, const std::map<std::string, int>& td_index) {
    if (value == "*") {
        std::vector<int> all(td_index.size());
        for (const auto& [id, i] : td_index)
            all[i] = i;
        return all;
    }
    auto it = td_index.find(value);
    if (it == td_index.end()) {
        loader.fail(t.file, row.line, "unknown typical day '" + value + "'");
        return {};
    }
    return {it->second};
}

std::vector<int> expand_hours(Loader& loader, const CsvTable& t, const CsvRow& row,
                              const std::string& value) {
    if (value == "*") {
        std::vector<int> all(kHoursPerDay);
        for (int h = 0; h < kHoursPerDay; ++h)
            all[h] = h;
        return all;
    }
    int h = -1;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), h);
    if (ec != std::errc() || ptr != value.data() + value.size() || h < 0 || h >= kHoursPerDay) {
        loader.fail(t.file, row.line, "hour '" + value + "' outside 0..23");
        return {};
    }
    return {h};
}

} // namespace

LoadError::LoadError(std::vector<LoadIssue> issues)
    : std::runtime_error(join_load_issues(issues)), issues_(std::move(issues)) {}

LoadedDataset load(const std::filesystem::path& dir) {
    Loader loader(dir);
    EnergySystemModel model;
    std::vector<UncertainParameter> uncertain;

    if (!std::filesystem::is_directory(dir))
        throw LoadError({{dir.string(), 0, "dataset directory does not exist"}});

    std::map<std::string, int> td_index;
    if (auto t = loader.read_csv("typical_days.csv")) {
        for (const auto& row : t->rows) {
            auto id = loader.text(*t, row, "td");
            auto weight = loader.number(*t, row, "weight");
            if (!id || !weight)
                continue;
            if (td_index.count(*id)) {
                loader.fail(t->file, row.line, "duplicate typical day '" + *id + "'");
                continue;
            }
            td_index[*id] = static_cast<int>(model.time_mapping.typical_days.size());
            model.time_mapping.typical_days.push_back({*id, *weight});
        }
    }
    const int n_td = model.time_mapping.day_count();

    if (auto t = loader.read_csv("resources.csv")) {
        for (const auto& row : t->rows) {
            auto name = loader.text(*t, row, "name");
            auto e_op = loader.number(*t, row, "e_op");
            auto gwp_op = loader.number(*t, row, "gwp_op");
            auto avail = loader.number(*t, row, "avail", /*allow_inf=*/true);
            if (name && e_op && gwp_op && avail)
                model.resources.push_back({*name, *e_op, *gwp_op, *avail});
        }
    }

    std::map<std::string, int> tech_index;
    if (auto t = loader.read_csv("technologies.csv")) {
        for (const auto& row : t->rows) {
            auto name = loader.text(*t, row, "name");
            auto e_constr = loader.number(*t, row, "e_constr");
            auto gwp_constr = loader.number(*t, row, "gwp_constr");
            auto lifetime = loader.number(*t, row, "lifetime");
            auto f_min = loader.number(*t, row, "f_min");
            auto f_max = loader.number(*t, row, "f_max", /*allow_inf=*/true);
            if (!(name && e_constr && gwp_constr && lifetime && f_min && f_max))
                continue;
            Technology tech;
            tech.name = *name;
            tech.e_constr = *e_constr;
            tech.gwp_constr = *gwp_constr;
            tech.lifetime = *lifetime;
            tech.f_min = *f_min;
            tech.f_max = *f_max;
            if (n_td > 0)
                tech.cpt = TdSeries::Ones(n_td, kHoursPerDay);
            tech_index[tech.name] = static_cast<int>(model.technologies.size());
            model.technologies.push_back(std::move(tech));
        }
    }

    if (auto t = loader.read_csv("conversion.csv")) {
        for (const auto& row : t->rows) {
            auto tech = loader.text(*t, row, "tech");
            auto carrier = loader.text(*t, row, "carrier");
            auto coeff = loader.number(*t, row, "coeff");
            if (!(tech && carrier && coeff))
                continue;
            auto it = tech_index.find(*tech);
            if (it == tech_index.end()) {
                loader.fail(t->file, row.line, "unknown technology '" + *tech + "'");
                continue;
            }
            model.technologies[it->second].conversion[*carrier] = *coeff;
        }
    }

    if (auto t = loader.read_csv("cpt.csv")) {
        for (const auto& row : t->rows) {
            auto tech = loader.text(*t, row, "tech");
            auto td = loader.text(*t, row, "td");
            auto hour = loader.text(*t, row, "h");
            auto value = loader.number(*t, row, "value");
            if (!(tech && td && hour && value))
                continue;
            auto it = tech_index.find(*tech);
            if (it == tech_index.end()) {
                loader.fail(t->file, row.line, "unknown technology '" + *tech + "'");
                continue;
            }
            for (int tdi : expand_td(loader, *t, row, *td, td_index))
                for (int h : expand_hours(loader, *t, row, *hour))
                    model.technologies[it->second].cpt(tdi, h) = *value;
        }
    }

    if (auto t = loader.read_csv("storage.csv")) {
        for (const auto& row : t->rows) {
            auto name = loader.text(*t, row, "name");
            auto carrier = loader.text(*t, row, "carrier");
            auto eff_in = loader.number(*t, row, "eff_in");
            auto eff_out = loader.number(*t, row, "eff_out");
            auto e_constr = loader.number(*t, row, "e_constr");
            auto gwp_constr = loader.number(*t, row, "gwp_constr");
            auto lifetime = loader.number(*t, row, "lifetime");
            auto f_max = loader.number(*t, row, "f_max", /*allow_inf=*/true);
            if (name && carrier && eff_in && eff_out && e_constr && gwp_constr && lifetime &&
                f_max)
                model.storages.push_back({*name, *carrier, *eff_in, *eff_out, *e_constr,
                                          *gwp_constr, *lifetime, *f_max});
        }
    }

    std::map<std::string, int> demand_index;
    if (auto t = loader.read_csv("demands.csv")) {
        for (const auto& row : t->rows) {
            auto name = loader.text(*t, row, "name");
            auto carrier = loader.text(*t, row, "carrier");
            auto annual = loader.number(*t, row, "annual");
            if (!(name && carrier && annual))
                continue;
            EndUseDemand d;
            d.name = *name;
            d.carrier = *carrier;
            d.annual = *annual;
            demand_index[d.name] = static_cast<int>(model.demands.size());
            model.demands.push_back(std::move(d));
        }
    }

    if (auto t = loader.read_csv("profiles.csv")) {
        std::set<std::string> with_profile;
        for (const auto& row : t->rows) {
            auto demand = loader.text(*t, row, "demand");
            auto td = loader.text(*t, row, "td");
            auto hour = loader.text(*t, row, "h");
            auto share = loader.number(*t, row, "share");
            if (!(demand && td && hour && share))
                continue;
            auto it = demand_index.find(*demand);
            if (it == demand_index.end()) {
                loader.fail(t->file, row.line, "unknown demand '" + *demand + "'");
                continue;
            }
            auto& profile = model.demands[it->second].profile;
            if (with_profile.insert(*demand).second && n_td > 0)
                profile = TdSeries::Zero(n_td, kHoursPerDay);
            for (int tdi : expand_td(loader, *t, row, *td, td_index))
                for (int h : expand_hours(loader, *t, row, *hour))
                    profile(tdi, h) = *share;
        }
    }

    if (std::filesystem::exists(dir / "uncertain.csv")) {
        if (auto t = loader.read_csv("uncertain.csv", /*required=*/false)) {
            for (const auto& row : t->rows) {
                auto path = loader.text(*t, row, "path");
                auto kind = loader.text(*t, row, "kind");
                auto lo = loader.number(*t, row, "lo");
                auto hi = loader.number(*t, row, "hi");
                if (!(path && kind && lo && hi))
                    continue;
                UncertainParameter p;
                p.path = *path;
                if (*kind == "relative")
                    p.kind = UncertainParameter::Kind::Relative;
                else if (*kind == "absolute")
                    p.kind = UncertainParameter::Kind::Absolute;
                else {
                    loader.fail(t->file, row.line,
                                "kind must be 'relative' or 'absolute', got '" + *kind + "'");
                    continue;
                }
                p.lo = *lo;
                p.hi = *hi;
                uncertain.push_back(std::move(p));
            }
        }
    }

    const MetaFile meta = parse_meta(loader, "meta.toml");
    if (auto t_op = meta_number(loader, meta, "", "t_op_hours", "meta.toml"))
        model.time_mapping.t_op_hours = *t_op;
    if (auto cats = meta.sections.find("categories"); cats != meta.sections.end())
        for (const auto& [name, values] : cats->second)
            if (!values.empty())
                model.resource_category[name] = values[0];
    for (const auto& [section, keys] : meta.sections) {
        if (section.rfind("shares.", 0) != 0)
            continue;
        ShareConstraint sc;
        sc.name = section.substr(7);
        if (auto* carrier = meta.find(section, "carrier"); carrier && !carrier->empty())
            sc.carrier = (*carrier)[0];
        else
            loader.fail("meta.toml", 0, "share '" + sc.name + "' needs a carrier");
        if (auto* members = meta.find(section, "members"))
            sc.members = *members;
        if (auto v = meta_number(loader, meta, section, "min_fraction", "meta.toml"))
            sc.min_fraction = *v;
        if (auto v = meta_number(loader, meta, section, "max_fraction", "meta.toml"))
            sc.max_fraction = *v;
        model.shares.push_back(std::move(sc));
    }

    if (!loader.issues.empty())
        throw LoadError(std::move(loader.issues));

    try {
        LoadedDataset out{validate(std::move(model)), std::move(uncertain)};
        if (!out.uncertain.empty())
            check_parameters(out.model.raw(), out.uncertain);
        return out;
    } catch (const ValidationError& e) {
        std::vector<LoadIssue> issues;
        for (const auto& issue : e.issues())
            issues.push_back({"(validation)", 0, issue.path + ": " + issue.message});
        throw LoadError(std::move(issues));
    }
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out)
            throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::string fmt(double v) { return format_double(v); }

std::string csv_series_block(const std::string& entity, const TdSeries& series,
                             const TimeMapping& tm) {
    std::ostringstream os;
    for (int td = 0; td < tm.day_count(); ++td)
        for (int h = 0; h < kHoursPerDay; ++h)
            os << entity << "," << tm.typical_days[td].id << "," << h << ","
               << fmt(series(td, h)) << "\n";
    return os.str();
}

} // namespace

void save(const EnergySystemModel& model, const std::vector<UncertainParameter>& uncertain,
          const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto& tm = model.time_mapping;

    {
        std::ostringstream os;
        os << "td,weight\n";
        for (const auto& td : tm.typical_days)
            os << td.id << "," << fmt(td.weight_days) << "\n";
        atomic_write(dir / "typical_days.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "name,e_op,gwp_op,avail\n";
        for (const auto& r : model.resources)
            os << r.name << "," << fmt(r.e_op) << "," << fmt(r.gwp_op) << ","
               << (r.avail == kUnbounded ? "inf" : fmt(r.avail)) << "\n";
        atomic_write(dir / "resources.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "name,e_constr,gwp_constr,lifetime,f_min,f_max\n";
        for (const auto& t : model.technologies)
            os << t.name << "," << fmt(t.e_constr) << "," << fmt(t.gwp_constr) << ","
               << fmt(t.lifetime) << "," << fmt(t.f_min) << ","
               << (t.f_max == kUnbounded ? "inf" : fmt(t.f_max)) << "\n";
        atomic_write(dir / "technologies.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "tech,carrier,coeff\n";
        for (const auto& t : model.technologies)
            for (const auto& [carrier, coeff] : t.conversion)
                os << t.name << "," << carrier << "," << fmt(coeff) << "\n";
        atomic_write(dir / "conversion.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "tech,td,h,value\n";
        for (const auto& t : model.technologies)
            if (t.cpt.size() > 0)
                os << csv_series_block(t.name, t.cpt, tm);
        atomic_write(dir / "cpt.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "name,carrier,eff_in,eff_out,e_constr,gwp_constr,lifetime,f_max\n";
        for (const auto& s : model.storages)
            os << s.name << "," << s.carrier << "," << fmt(s.eff_in) << "," << fmt(s.eff_out)
               << "," << fmt(s.e_constr) << "," << fmt(s.gwp_constr) << "," << fmt(s.lifetime)
               << "," << (s.f_max == kUnbounded ? "inf" : fmt(s.f_max)) << "\n";
        atomic_write(dir / "storage.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "name,carrier,annual\n";
        for (const auto& d : model.demands)
            os << d.name << "," << d.carrier << "," << fmt(d.annual) << "\n";
        atomic_write(dir / "demands.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "demand,td,h,share\n";
        for (const auto& d : model.demands)
            if (d.profile.size() > 0)
                os << csv_series_block(d.name, d.profile, tm);
        atomic_write(dir / "profiles.csv", os.str());
    }
    if (!uncertain.empty()) {
        std::ostringstream os;
        os << "path,kind,lo,hi\n";
        for (const auto& p : uncertain)
            os << p.path << ","
               << (p.kind == UncertainParameter::Kind::Relative ? "relative" : "absolute") << ","
               << fmt(p.lo) << "," << fmt(p.hi) << "\n";
        atomic_write(dir / "uncertain.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "t_op_hours = " << fmt(tm.t_op_hours) << "\n";
        if (!model.resource_category.empty()) {
            os << "\n[categories]\n";
            for (const auto& [name, cat] : model.resource_category)
                os << name << " = \"" << cat << "\"\n";
        }
        for (const auto& sc : model.shares) {
            os << "\n[shares." << sc.name << "]\n";
            os << "carrier = \"" << sc.carrier << "\"\n";
            os << "members = [";
            for (size_t i = 0; i < sc.members.size(); ++i)
                os << (i ? ", " : "") << "\"" << sc.members[i] << "\"";
            os << "]\n";
            if (sc.min_fraction)
                os << "min_fraction = " << fmt(*sc.min_fraction) << "\n";
            if (sc.max_fraction)
                os << "max_fraction = " << fmt(*sc.max_fraction) << "\n";
        }
        atomic_write(dir / "meta.toml", os.str());
    }
}

namespace {

json breakdown_json(const std::map<std::string, double>& by, double unit = 1.0) {
    json j = json::object();
    for (const auto& [name, v] : by)
        j[name] = v * unit;
    return j;
}

} // namespace

std::string report_json(const ScenarioResult& result) {
    json j;
    j["schema_version"] = 1;
    j["scenario"]["gwp_limit_mt"] =
        result.gwp_limit ? json(*result.gwp_limit / kTonnesPerMt) : json(nullptr);
    j["scenario"]["status"] = to_string(result.status);
    j["scenario"]["objective_gwh"] = result.objective;
    j["scenario"]["solve_seconds"] = result.solve_seconds;
    if (result.report) {
        const auto& r = *result.report;
        j["eroi"] = r.eroi;
        j["energy_invested"]["total_gwh"] = r.e_in.total;
        j["energy_invested"]["construction_by_tech_gwh"] = breakdown_json(r.e_in.constr_by_tech);
        j["energy_invested"]["operation_by_resource_gwh"] = breakdown_json(r.e_in.op_by_res);
        j["gwp"]["total_mt"] = r.gwp.total / kTonnesPerMt;
        j["gwp"]["construction_by_tech_mt"] =
            breakdown_json(r.gwp.constr_by_tech, 1.0 / kTonnesPerMt);
        j["gwp"]["operation_by_resource_mt"] = breakdown_json(r.gwp.op_by_res, 1.0 / kTonnesPerMt);
        j["fec"]["total_gwh"] = r.fec.total;
        j["fec"]["by_demand_gwh"] = breakdown_json(r.fec.by_eud);
        json mix = json::object();
        for (const auto& [name, e] : r.primary_mix) {
            mix[name]["annual_gwh"] = e.annual_gwh;
            mix[name]["share"] = e.share;
            mix[name]["category"] = e.category;
        }
        j["primary_mix"] = mix;
    }
    return j.dump(2) + "\n";
}

const std::vector<std::string>& mix_categories() {
    static const std::vector<std::string> cats = {"fossil", "non-RE", "RE-fuels", "biomass",
                                                  "wind",   "solar",  "other"};
    return cats;
}

namespace {

std::string category_column(const std::string& cat) {
    std::string s = "share_";
    for (char c : cat) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else
            s += '_';
    }
    return s;
}

void frontier_row(std::ostream& os, const std::string& label, int k,
                  const ScenarioResult& r) {
    os << label << "," << k << ","
       << (r.gwp_limit ? fmt(*r.gwp_limit / kTonnesPerMt) : std::string()) << ","
       << to_string(r.status);
    if (r.report) {
        const auto& rep = *r.report;
        os << "," << fmt(rep.eroi) << "," << fmt(rep.e_in.total) << "," << fmt(rep.fec.total)
           << "," << fmt(rep.gwp.total / kTonnesPerMt);
        std::map<std::string, double> share_by_cat;
        for (const auto& [name, e] : rep.primary_mix)
            share_by_cat[e.category] += e.share;
        for (const auto& cat : mix_categories())
            os << "," << fmt(share_by_cat.count(cat) ? share_by_cat[cat] : 0.0);
    } else {
        os << ",,,,";
        for (size_t i = 0; i < mix_categories().size(); ++i)
            os << ",";
    }
    os << "," << fmt(r.solve_seconds) << "\n";
}

} // namespace

void write_frontier_csv(const SweepResult& sweep, std::ostream& os) {
    os << "scenario,k,gwp_limit_mt,status,eroi,e_in_tot_gwh,fec_total_gwh,gwp_tot_mt";
    for (const auto& cat : mix_categories())
        os << "," << category_column(cat);
    os << ",solve_seconds\n";
    frontier_row(os, "reference", 0, sweep.reference);
    for (size_t i = 0; i < sweep.targets.size(); ++i)
        frontier_row(os, "target", static_cast<int>(i) + 1, sweep.targets[i]);
}

void write_screening_csv(const ScreeningResult& screening, std::ostream& os) {
    os << "parameter,max_total_order,min_total_order,mean_total_order,threshold,shortlisted\n";
    const int d = static_cast<int>(screening.parameter_paths.size());
    for (int j = 0; j < d; ++j) {
        double mn = kUnbounded, mean = 0.0;
        for (const auto& run : screening.runs) {
            mn = std::min(mn, run.total_order[j]);
            mean += run.total_order[j];
        }
        if (!screening.runs.empty())
            mean /= static_cast<double>(screening.runs.size());
        const bool kept = std::find(screening.shortlist.begin(), screening.shortlist.end(), j) !=
                          screening.shortlist.end();
        os << screening.parameter_paths[j] << "," << fmt(screening.max_total_order[j]) << ","
           << fmt(screening.runs.empty() ? 0.0 : mn) << "," << fmt(mean) << ","
           << fmt(screening.threshold) << "," << (kept ? 1 : 0) << "\n";
    }
}

std::string sobol_report_json(const SobolReport& report) {
    json j;
    j["schema_version"] = 1;
    j["seed"] = report.seed;
    j["mean"] = report.mean;
    j["variance"] = report.variance;
    j["std_dev"] = report.std_dev;
    j["cov"] = report.cov;
    j["threshold"] = report.threshold;
    j["loo_error"] = report.loo_error;
    json params = json::array();
    for (size_t i = 0; i < report.parameter_paths.size(); ++i) {
        json p;
        p["path"] = report.parameter_paths[i];
        p["total_order"] = report.total_order[static_cast<int>(i)];
        p["critical"] = std::find(report.critical.begin(), report.critical.end(),
                                  static_cast<int>(i)) != report.critical.end();
        params.push_back(p);
    }
    j["parameters"] = params;
    return j.dump(2) + "\n";
}

void write_sobol_csv(const SobolReport& report, std::ostream& os) {
    os << "parameter,total_order,critical\n";
    for (size_t i = 0; i < report.parameter_paths.size(); ++i) {
        const bool crit = std::find(report.critical.begin(), report.critical.end(),
                                    static_cast<int>(i)) != report.critical.end();
        os << report.parameter_paths[i] << "," << fmt(report.total_order[static_cast<int>(i)])
           << "," << (crit ? 1 : 0) << "\n";
    }
}

void write_histogram_csv(const pce::Histogram& histogram, std::ostream& os) {
    os << "bin_lo,bin_hi,count,density\n";
    const int bins = static_cast<int>(histogram.counts.size());
    for (int b = 0; b < bins; ++b) {
        const double lo = histogram.edges[b], hi = histogram.edges[b + 1];
        const double width = hi - lo;
        const double density =
            width > 0.0 && histogram.samples > 0
                ? histogram.counts[b] / (width * static_cast<double>(histogram.samples))
                : 0.0;
        os << fmt(lo) << "," << fmt(hi) << "," << fmt(histogram.counts[b]) << ","
           << fmt(density) << "\n";
    }
}

void render_report_tables(const std::string& report_json_text,
                          const std::filesystem::path& out_dir) {
    const json j = json::parse(report_json_text);
    std::filesystem::create_directories(out_dir);

    auto write_breakdown = [&](const char* section, const char* field, const char* header,
                               const std::string& file) {
        std::ostringstream os;
        os << header << "\n";
        if (j.contains(section) && j[section].contains(field))
            for (const auto& [name, v] : j[section][field].items())
                os << name << "," << fmt(v.get<double>()) << "\n";
        atomic_write(out_dir / file, os.str());
    };
    write_breakdown("energy_invested", "construction_by_tech_gwh", "technology,e_constr_gwh",
                    "einv_construction.csv");
    write_breakdown("energy_invested", "operation_by_resource_gwh", "resource,e_op_gwh",
                    "einv_operation.csv");
    write_breakdown("gwp", "construction_by_tech_mt", "technology,gwp_constr_mt",
                    "gwp_construction.csv");
    write_breakdown("gwp", "operation_by_resource_mt", "resource,gwp_op_mt",
                    "gwp_operation.csv");
    write_breakdown("fec", "by_demand_gwh", "demand,fec_gwh", "fec.csv");

    std::ostringstream os;
    os << "resource,annual_gwh,share,category\n";
    if (j.contains("primary_mix"))
        for (const auto& [name, e] : j["primary_mix"].items())
            os << name << "," << fmt(e["annual_gwh"].get<double>()) << ","
               << fmt(e["share"].get<double>()) << "," << e["category"].get<std::string>()
               << "\n";
    atomic_write(out_dir / "mix.csv", os.str());
}

} // namespace eroiplan
