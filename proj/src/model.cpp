#include "eroiplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace eroiplan {

namespace {

constexpr double kYearHours = 8760.0;

bool series_equal(const TdSeries& a, const TdSeries& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.rows() == 0 || a == b);
}

std::string join_issues(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    os << "model validation failed (" << issues.size() << " issue"
       << (issues.size() == 1 ? "" : "s") << ")";
    for (const auto& i : issues)
        os << "\n  " << i.path << ": " << i.message;
    return os.str();
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

} // namespace

double TimeMapping::hours_per_year() const {
    double total = 0.0;
    for (const auto& td : typical_days)
        total += td.weight_days * kHoursPerDay * t_op_hours;
    return total;
}

std::string Technology::main_output() const {
    for (const auto& [carrier, coeff] : conversion)
        if (coeff == 1.0)
            return carrier;
    return {};
}

bool Technology::operator==(const Technology& o) const {
    return name == o.name && e_constr == o.e_constr && gwp_constr == o.gwp_constr &&
           lifetime == o.lifetime && f_min == o.f_min && f_max == o.f_max &&
           conversion == o.conversion && series_equal(cpt, o.cpt);
}

bool EndUseDemand::operator==(const EndUseDemand& o) const {
    return name == o.name && carrier == o.carrier && annual == o.annual &&
           series_equal(profile, o.profile);
}

bool EnergySystemModel::operator==(const EnergySystemModel& o) const {
    return time_mapping == o.time_mapping && resources == o.resources &&
           technologies == o.technologies && storages == o.storages && demands == o.demands &&
           shares == o.shares && resource_category == o.resource_category;
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

const Resource* ValidatedModel::find_resource(const std::string& name) const {
    auto it = resource_index_.find(name);
    return it == resource_index_.end() ? nullptr : &model_.resources[it->second];
}

const Technology* ValidatedModel::find_technology(const std::string& name) const {
    auto it = tech_index_.find(name);
    return it == tech_index_.end() ? nullptr : &model_.technologies[it->second];
}

const StorageUnit* ValidatedModel::find_storage(const std::string& name) const {
    auto it = storage_index_.find(name);
    return it == storage_index_.end() ? nullptr : &model_.storages[it->second];
}

std::string ValidatedModel::category_of(const std::string& resource) const {
    auto it = model_.resource_category.find(resource);
    return it == model_.resource_category.end() ? std::string("other") : it->second;
}

namespace {

void check_series_shape(const TdSeries& s, int n_td, const std::string& path,
                        std::vector<ValidationIssue>& issues) {
    if (s.rows() != n_td || s.cols() != kHoursPerDay)
        issues.push_back({path, "expected a " + std::to_string(n_td) + "x" +
                                    std::to_string(kHoursPerDay) + " series, got " +
                                    std::to_string(s.rows()) + "x" + std::to_string(s.cols())});
}

} // namespace

ValidatedModel validate(EnergySystemModel model) {
    std::vector<ValidationIssue> issues;
    const auto& tm = model.time_mapping;
    const int n_td = tm.day_count();

    if (n_td == 0)
        issues.push_back({"time_mapping.typical_days", "at least one typical day required"});
    if (!(tm.t_op_hours > 0.0))
        issues.push_back({"time_mapping.t_op", "period duration must be positive"});
    for (const auto& td : tm.typical_days)
        if (!finite_nonneg(td.weight_days))
            issues.push_back({"time_mapping.typical_days." + td.id, "weight must be >= 0"});
    {
        std::set<std::string> ids;
        for (const auto& td : tm.typical_days)
            if (!ids.insert(td.id).second)
                issues.push_back({"time_mapping.typical_days." + td.id, "duplicate typical day id"});
    }
    if (n_td > 0 && std::abs(tm.hours_per_year() - kYearHours) > 1e-6)
        issues.push_back({"time_mapping", "weights * 24 * t_op must cover 8760 hours, got " +
                                              std::to_string(tm.hours_per_year())});

    // Carriers produced (or imported) anywhere; consumed carriers must appear here.
    std::set<std::string> produced, consumed, all_carriers;

    std::set<std::string> resource_names;
    for (auto& r : model.resources) {
        const std::string path = "resource." + r.name;
        if (r.name.empty())
            issues.push_back({path, "empty name"});
        if (!resource_names.insert(r.name).second)
            issues.push_back({path, "duplicate resource name"});
        if (!finite_nonneg(r.e_op))
            issues.push_back({path + ".e_op", "must be >= 0"});
        if (!finite_nonneg(r.gwp_op))
            issues.push_back({path + ".gwp_op", "must be >= 0"});
        if (std::isnan(r.avail) || r.avail < 0.0)
            issues.push_back({path + ".avail", "must be >= 0 or unbounded"});
        produced.insert(r.name);
        all_carriers.insert(r.name);
    }

    std::set<std::string> tech_names;
    for (auto& t : model.technologies) {
        const std::string path = "tech." + t.name;
        if (t.name.empty())
            issues.push_back({path, "empty name"});
        if (!tech_names.insert(t.name).second)
            issues.push_back({path, "duplicate technology name"});
        if (!(t.lifetime > 0.0) || !std::isfinite(t.lifetime))
            issues.push_back({path + ".lifetime", "must be > 0"});
        if (!finite_nonneg(t.e_constr))
            issues.push_back({path + ".e_constr", "must be >= 0"});
        if (!finite_nonneg(t.gwp_constr))
            issues.push_back({path + ".gwp_constr", "must be >= 0"});
        if (std::isnan(t.f_min) || std::isnan(t.f_max) || t.f_min < 0.0 || t.f_min > t.f_max)
            issues.push_back({path + ".f_min", "need 0 <= f_min <= f_max, got [" +
                                                   std::to_string(t.f_min) + ", " +
                                                   std::to_string(t.f_max) + "]"});
        int plus_one = 0;
        for (const auto& [carrier, coeff] : t.conversion) {
            if (!std::isfinite(coeff))
                issues.push_back({path + ".conversion." + carrier, "non-finite coefficient"});
            if (coeff == 1.0)
                ++plus_one;
            if (coeff > 0.0)
                produced.insert(carrier);
            else if (coeff < 0.0)
                consumed.insert(carrier);
            all_carriers.insert(carrier);
        }
        if (plus_one != 1)
            issues.push_back({path + ".conversion",
                              "exactly one carrier must have coefficient +1 (main output)"});
        if (t.cpt.size() == 0 && n_td > 0)
            t.cpt = TdSeries::Ones(n_td, kHoursPerDay);
        else {
            check_series_shape(t.cpt, n_td, path + ".cpt", issues);
            if (t.cpt.size() > 0 &&
                (!(t.cpt.minCoeff() >= 0.0) || !(t.cpt.maxCoeff() <= 1.0)))
                issues.push_back({path + ".cpt", "capacity factors must lie in [0,1]"});
        }
    }

    std::set<std::string> storage_names;
    for (const auto& s : model.storages) {
        const std::string path = "storage." + s.name;
        if (s.name.empty())
            issues.push_back({path, "empty name"});
        if (!storage_names.insert(s.name).second)
            issues.push_back({path, "duplicate storage name"});
        if (!(s.eff_in > 0.0 && s.eff_in <= 1.0))
            issues.push_back({path + ".eff_in", "must lie in (0,1]"});
        if (!(s.eff_out > 0.0 && s.eff_out <= 1.0))
            issues.push_back({path + ".eff_out", "must lie in (0,1]"});
        if (!(s.lifetime > 0.0) || !std::isfinite(s.lifetime))
            issues.push_back({path + ".lifetime", "must be > 0"});
        if (!finite_nonneg(s.e_constr))
            issues.push_back({path + ".e_constr", "must be >= 0"});
        if (!finite_nonneg(s.gwp_constr))
            issues.push_back({path + ".gwp_constr", "must be >= 0"});
        if (std::isnan(s.f_max) || s.f_max < 0.0)
            issues.push_back({path + ".f_max", "must be >= 0 or unbounded"});
        if (s.carrier.empty())
            issues.push_back({path + ".carrier", "empty carrier"});
        // Storage shifts energy within a carrier; it neither creates nor dangles one.
        all_carriers.insert(s.carrier);
        consumed.insert(s.carrier);
        produced.insert(s.carrier);
    }

    std::set<std::string> demand_names;
    for (auto& d : model.demands) {
        const std::string path = "demand." + d.name;
        if (d.name.empty())
            issues.push_back({path, "empty name"});
        if (!demand_names.insert(d.name).second)
            issues.push_back({path, "duplicate demand name"});
        if (!finite_nonneg(d.annual))
            issues.push_back({path + ".annual", "must be >= 0"});
        if (d.carrier.empty())
            issues.push_back({path + ".carrier", "empty carrier"});
        consumed.insert(d.carrier);
        all_carriers.insert(d.carrier);
        if (d.profile.size() == 0 && n_td > 0) {
            // Flat profile: equal share per period, Σ w·share = 1.
            d.profile = TdSeries::Constant(n_td, kHoursPerDay, tm.t_op_hours / kYearHours);
        } else if (n_td > 0) {
            check_series_shape(d.profile, n_td, path + ".profile", issues);
            if (d.profile.size() > 0 && d.profile.minCoeff() < 0.0)
                issues.push_back({path + ".profile", "shares must be nonnegative"});
            if (d.profile.rows() == n_td && d.profile.cols() == kHoursPerDay) {
                double total = 0.0;
                for (int td = 0; td < n_td; ++td)
                    total += tm.typical_days[td].weight_days * d.profile.row(td).sum();
                if (std::abs(total - 1.0) > 1e-9)
                    issues.push_back({path + ".profile",
                                      "weighted shares must sum to 1, got " + std::to_string(total)});
            }
        }
    }

    for (const auto& sc : model.shares) {
        const std::string path = "share." + sc.name;
        if (sc.members.empty())
            issues.push_back({path + ".members", "empty member list"});
        for (const auto& m : sc.members)
            if (!tech_names.count(m))
                issues.push_back({path + ".members", "unknown technology '" + m + "'"});
        if (!all_carriers.count(sc.carrier))
            issues.push_back({path + ".carrier", "unknown carrier '" + sc.carrier + "'"});
        auto frac_ok = [](double f) { return std::isfinite(f) && f >= 0.0 && f <= 1.0; };
        if (sc.min_fraction && !frac_ok(*sc.min_fraction))
            issues.push_back({path + ".min_fraction", "must lie in [0,1]"});
        if (sc.max_fraction && !frac_ok(*sc.max_fraction))
            issues.push_back({path + ".max_fraction", "must lie in [0,1]"});
        if (sc.min_fraction && sc.max_fraction && *sc.min_fraction > *sc.max_fraction)
            issues.push_back({path, "min_fraction exceeds max_fraction"});
        if (!sc.min_fraction && !sc.max_fraction)
            issues.push_back({path, "at least one of min_fraction/max_fraction required"});
    }

    for (const auto& [name, cat] : model.resource_category)
        if (!resource_names.count(name))
            issues.push_back({"meta.category." + name, "unknown resource '" + name + "'"});

    // Every consumed carrier must have a possible producer or importer.
    for (const auto& c : consumed)
        if (!produced.count(c))
            issues.push_back({"carrier." + c, "consumed but never produced or imported"});

    if (!issues.empty())
        throw ValidationError(std::move(issues));

    ValidatedModel vm;
    vm.model_ = std::move(model);
    vm.carriers_.assign(all_carriers.begin(), all_carriers.end());
    for (int i = 0; i < static_cast<int>(vm.model_.resources.size()); ++i)
        vm.resource_index_[vm.model_.resources[i].name] = i;
    for (int i = 0; i < static_cast<int>(vm.model_.technologies.size()); ++i)
        vm.tech_index_[vm.model_.technologies[i].name] = i;
    for (int i = 0; i < static_cast<int>(vm.model_.storages.size()); ++i)
        vm.storage_index_[vm.model_.storages[i].name] = i;
    return vm;
}

double annualize(const TdSeries& q_per_period, const TimeMapping& mapping) {
    const int n_td = mapping.day_count();
    if (q_per_period.rows() != n_td || q_per_period.cols() != kHoursPerDay)
        throw std::invalid_argument(
            "annualize: series does not cover the (td, h) grid: got " +
            std::to_string(q_per_period.rows()) + "x" + std::to_string(q_per_period.cols()) +
            ", expected " + std::to_string(n_td) + "x" + std::to_string(kHoursPerDay));
    double total = 0.0;
    for (int td = 0; td < n_td; ++td)
        total += mapping.typical_days[td].weight_days * q_per_period.row(td).sum();
    return total * mapping.t_op_hours;
}

TdSeries demand_series(const EndUseDemand& demand, const TimeMapping& mapping) {
    if (demand.profile.rows() != mapping.day_count() || demand.profile.cols() != kHoursPerDay)
        throw std::invalid_argument("demand_series: profile missing or mis-shaped for demand '" +
                                    demand.name + "'");
    return demand.annual / mapping.t_op_hours * demand.profile;
}

} // namespace eroiplan
