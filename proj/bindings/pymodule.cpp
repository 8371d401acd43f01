#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "re100/econ.hpp"
#include "re100/envelope.hpp"
#include "re100/errors.hpp"
#include "re100/lossy.hpp"
#include "re100/lp.hpp"
#include "re100/oracle.hpp"
#include "re100/profile_io.hpp"
#include "re100/serialize.hpp"

namespace py = pybind11;
using namespace re100;

namespace {

Profile make_profile(const std::vector<double>& values, const std::string& kind,
                     const std::string& label, double step_hours) {
    ProfileKind k = kind == "demand" ? ProfileKind::demand : ProfileKind::generation;
    return Profile(values, k, label, step_hours);
}

SynthParams params_from_kwargs(double amplitude, double phase, int on_start, int on_end,
                               double noise) {
    SynthParams p;
    p.amplitude = amplitude;
    p.phase = phase;
    p.on_start = on_start;
    p.on_end = on_end;
    p.noise = noise;
    return p;
}

}  // namespace

PYBIND11_MODULE(_re100, m) {
    m.doc() = "Generation/storage sizing and cost analysis for fully renewable "
              "power systems";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_ValueError);
    py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<Profile>(m, "Profile")
        .def(py::init(&make_profile), py::arg("values"), py::arg("kind") = "generation",
             py::arg("label") = "", py::arg("step_hours") = 1.0)
        .def_property_readonly("values", &Profile::values)
        .def_property_readonly("steps", &Profile::steps)
        .def_property_readonly("label", &Profile::label)
        .def_property_readonly("step_hours", &Profile::step_hours)
        .def_property_readonly("kind", [](const Profile& p) {
            return p.kind() == ProfileKind::demand ? "demand" : "generation";
        })
        .def("__len__", &Profile::steps)
        .def("__getitem__", [](const Profile& p, std::size_t t) {
            if (t >= p.values().size()) throw py::index_error();
            return p.values()[t];
        });

    m.def(
        "normalize",
        [](const std::vector<double>& raw, const std::string& kind, const std::string& label,
           double step_hours) {
            ProfileKind k = kind == "demand" ? ProfileKind::demand : ProfileKind::generation;
            return normalize(raw, k, label, step_hours);
        },
        py::arg("raw_series"), py::arg("kind") = "generation", py::arg("label") = "",
        py::arg("step_hours") = 1.0, "Scale a non-negative series to unit total.");

    m.def("mix", &mix, py::arg("generations"), py::arg("betas"),
          "Generation-share weighted mixture of normalized profiles.");

    m.def(
        "synth",
        [](const std::string& pattern, int steps, std::uint64_t seed, const std::string& kind,
           const std::string& label, double amplitude, double phase, int on_start, int on_end,
           double noise) {
            ProfileKind k = kind == "demand" ? ProfileKind::demand : ProfileKind::generation;
            return synth(pattern, steps,
                         params_from_kwargs(amplitude, phase, on_start, on_end, noise), seed, k,
                         label);
        },
        py::arg("pattern"), py::arg("steps"), py::arg("seed") = 0,
        py::arg("kind") = "generation", py::arg("label") = "", py::arg("amplitude") = 0.5,
        py::arg("phase") = 0.0, py::arg("on_start") = 1, py::arg("on_end") = 1,
        py::arg("noise") = 0.25,
        "Deterministic synthetic profile: uniform | diurnal-sine | seasonal-sine | block | "
        "seeded-noise-mix.");

    py::class_<ProfileSet>(m, "ProfileSet")
        .def_readonly("demand", &ProfileSet::demand)
        .def_readonly("region", &ProfileSet::region)
        .def_readonly("year", &ProfileSet::year)
        .def_property_readonly("generations",
                               [](const ProfileSet& s) { return s.generations; })
        .def("generation", &ProfileSet::generation, py::arg("name"));

    m.def(
        "ingest",
        [](const std::string& path, const std::string& region, const std::string& year) {
            return ingest_occto(path, region, year);
        },
        py::arg("path"), py::arg("region") = "", py::arg("year") = "",
        "Read an hourly demand/generation table.");
    m.def("export_table", &export_occto, py::arg("profile_set"), py::arg("path"),
          "Write the normalized table back out (12 significant digits).");

    py::class_<Interval>(m, "Interval")
        .def_readonly("start", &Interval::start)
        .def_readonly("end", &Interval::end)
        .def("__repr__", [](const Interval& iv) {
            return "Interval(" + std::to_string(iv.start) + ", " + std::to_string(iv.end) + ")";
        });

    py::class_<Segment>(m, "Segment")
        .def_readonly("slope", &Segment::slope)
        .def_readonly("intercept", &Segment::intercept)
        .def_readonly("xg_lo", &Segment::xg_lo)
        .def_readonly("xg_hi", &Segment::xg_hi)
        .def_readonly("interval", &Segment::interval);

    py::class_<CapacityPoint>(m, "CapacityPoint")
        .def_readonly("x_g", &CapacityPoint::x_g)
        .def_readonly("x_s", &CapacityPoint::x_s)
        .def("__repr__", [](const CapacityPoint& v) {
            return "CapacityPoint(x_g=" + std::to_string(v.x_g) +
                   ", x_s=" + std::to_string(v.x_s) + ")";
        });

    py::class_<PartialSumPoint>(m, "PartialSumPoint")
        .def_readonly("interval", &PartialSumPoint::interval)
        .def_readonly("gen_sum", &PartialSumPoint::gen_sum)
        .def_readonly("dem_sum", &PartialSumPoint::dem_sum);

    py::class_<BottleneckReport>(m, "BottleneckReport")
        .def_readonly("x_g", &BottleneckReport::x_g)
        .def_readonly("interval", &BottleneckReport::interval)
        .def_readonly("dem_sum", &BottleneckReport::dem_sum)
        .def_readonly("gen_sum", &BottleneckReport::gen_sum)
        .def_readonly("x_s", &BottleneckReport::x_s)
        .def_readonly("length_hours", &BottleneckReport::length_hours)
        .def_readonly("degenerate", &BottleneckReport::degenerate);

    py::class_<ProductionFunction>(m, "ProductionFunction")
        .def("eval", &ProductionFunction::eval, py::arg("x_g"))
        .def("__call__", &ProductionFunction::eval, py::arg("x_g"))
        .def("bottleneck_at", &ProductionFunction::bottleneck_at, py::arg("x_g"))
        .def_property_readonly("segments", &ProductionFunction::segments)
        .def_property_readonly("vertices", &ProductionFunction::vertices)
        .def_property_readonly("xg_min", &ProductionFunction::xg_min)
        .def_property_readonly("xg_zero", &ProductionFunction::xg_zero)
        .def_property_readonly("hull_boundary", &ProductionFunction::hull_boundary)
        .def_property_readonly("steps", &ProductionFunction::steps)
        .def("to_text", [](const ProductionFunction& pf) { return to_text(pf); })
        .def_static("from_text", &production_function_from_text, py::arg("text"));

    m.def(
        "partial_sum_hull",
        [](const Profile& demand, const Profile& generation, int chunk_starts, int threads,
           bool exact_orientation) {
            HullOptions options;
            if (chunk_starts > 0) options.chunk_starts = chunk_starts;
            options.threads = threads;
            options.exact_orientation = exact_orientation;
            return partial_sum_hull(demand, generation, options);
        },
        py::arg("demand"), py::arg("generation"), py::arg("chunk_starts") = 0,
        py::arg("threads") = 0, py::arg("exact_orientation") = false,
        "Exact production function from the hull over all T^2 interval partial sums.");

    m.def("storage_requirement_lossy", &storage_requirement_lossy, py::arg("demand"),
          py::arg("generation"), py::arg("x_g"), py::arg("charge_eff"),
          py::arg("discharge_factor"));
    m.def("min_generation_lossy", &min_generation_lossy, py::arg("demand"),
          py::arg("generation"), py::arg("charge_eff"), py::arg("discharge_factor"));
    m.def("storage_requirement_power_capped", &storage_requirement_power_capped,
          py::arg("demand"), py::arg("generation"), py::arg("x_g"), py::arg("power_cap"),
          py::arg("charge_eff"), py::arg("discharge_factor"));
    m.def("lossy_sweep", &lossy_sweep, py::arg("demand"), py::arg("generation"),
          py::arg("charge_eff"), py::arg("discharge_factor"), py::arg("xg_lo"),
          py::arg("xg_hi"), py::arg("samples"));

    py::class_<Financials>(m, "Financials")
        .def(py::init([](double capital_cost, double fixed_om, double variable_cost,
                         double discount_rate, int lifetime, double capacity_factor,
                         double hours_per_period) {
                 Financials f;
                 f.capital_cost = capital_cost;
                 f.fixed_om = fixed_om;
                 f.variable_cost = variable_cost;
                 f.discount_rate = discount_rate;
                 f.lifetime = lifetime;
                 f.capacity_factor = capacity_factor;
                 f.hours_per_period = hours_per_period;
                 return f;
             }),
             py::arg("capital_cost") = 0.0, py::arg("fixed_om") = 0.0,
             py::arg("variable_cost") = 0.0, py::arg("discount_rate") = 0.0,
             py::arg("lifetime") = 1, py::arg("capacity_factor") = 1.0,
             py::arg("hours_per_period") = 8760.0)
        .def_readwrite("capital_cost", &Financials::capital_cost)
        .def_readwrite("fixed_om", &Financials::fixed_om)
        .def_readwrite("variable_cost", &Financials::variable_cost)
        .def_readwrite("discount_rate", &Financials::discount_rate)
        .def_readwrite("lifetime", &Financials::lifetime)
        .def_readwrite("capacity_factor", &Financials::capacity_factor)
        .def_readwrite("hours_per_period", &Financials::hours_per_period);

    m.def("present_value_factor", &present_value_factor, py::arg("discount_rate"),
          py::arg("periods"));
    m.def("single_lcoe", &single_lcoe, py::arg("financials"));
    m.def("module_lcoe", &module_lcoe, py::arg("lcoes"), py::arg("shares"));

    py::class_<TechCosts>(m, "TechCosts")
        .def(py::init<>())
        .def_readwrite("c_g", &TechCosts::c_g)
        .def_readwrite("c_s", &TechCosts::c_s)
        .def_readwrite("c_1e", &TechCosts::c_1e)
        .def_readwrite("c_1p", &TechCosts::c_1p)
        .def_readwrite("c_2e", &TechCosts::c_2e)
        .def_readwrite("c_2p_in", &TechCosts::c_2p_in)
        .def_readwrite("c_2p_out", &TechCosts::c_2p_out)
        .def_readwrite("currency", &TechCosts::currency);

    m.def("total_lcoe",
          py::overload_cast<double, double, double, double>(&total_lcoe), py::arg("c_g"),
          py::arg("c_s"), py::arg("x_g"), py::arg("x_s"));

    py::class_<CostRegion>(m, "CostRegion")
        .def_readonly("rho_lo", &CostRegion::rho_lo)
        .def_readonly("rho_hi", &CostRegion::rho_hi)
        .def_readonly("vertex", &CostRegion::vertex);

    py::class_<OptimalCapacity>(m, "OptimalCapacity")
        .def_readonly("vertex", &OptimalCapacity::vertex)
        .def_readonly("lcoe", &OptimalCapacity::lcoe)
        .def_readonly("region", &OptimalCapacity::region);

    py::class_<Contour>(m, "Contour")
        .def_readonly("lcoe", &Contour::lcoe)
        .def_readonly("points", &Contour::points)
        .def_readonly("vertical_ray", &Contour::vertical_ray);

    py::class_<CostFunction>(m, "CostFunction")
        .def_property_readonly("regions", &CostFunction::regions)
        .def_property_readonly("source", &CostFunction::source);

    m.def("legendre", &legendre, py::arg("production_function"),
          "Dual transform: cost-ratio regions to optimal-capacity vertices.");
    m.def("optimal_capacity", &optimal_capacity, py::arg("cost_function"), py::arg("c_g"),
          py::arg("c_s"));
    m.def("contour", &contour, py::arg("cost_function"), py::arg("lcoe_target"));

    py::class_<StorageTech>(m, "StorageTech")
        .def(py::init([](double charge_eff, double discharge_factor, double energy_cost,
                         double power_cost_in, double power_cost_out) {
                 return StorageTech{charge_eff, discharge_factor, energy_cost, power_cost_in,
                                    power_cost_out};
             }),
             py::arg("charge_eff") = 1.0, py::arg("discharge_factor") = 1.0,
             py::arg("energy_cost") = 0.0, py::arg("power_cost_in") = 0.0,
             py::arg("power_cost_out") = 0.0)
        .def_readwrite("charge_eff", &StorageTech::charge_eff)
        .def_readwrite("discharge_factor", &StorageTech::discharge_factor)
        .def_readwrite("energy_cost", &StorageTech::energy_cost)
        .def_readwrite("power_cost_in", &StorageTech::power_cost_in)
        .def_readwrite("power_cost_out", &StorageTech::power_cost_out)
        .def_property_readonly("cycle_eff", &StorageTech::cycle_eff)
        .def_static("st1", &StorageTech::st1)
        .def_static("st2", &StorageTech::st2);

    py::class_<LpModel>(m, "LpModel")
        .def_property_readonly("t_steps", [](const LpModel& mm) { return mm.t_steps; })
        .def_property_readonly("var_names", [](const LpModel& mm) { return mm.var_names; })
        .def_property_readonly("variant",
                               [](const LpModel& mm) { return to_string(mm.variant); })
        .def_property_readonly("n_rows", [](const LpModel& mm) { return mm.rows.size(); })
        .def("fix_variable", &LpModel::fix_variable, py::arg("name"), py::arg("value"))
        .def("to_text", [](const LpModel& mm) { return to_text(mm); });

    py::class_<LpSolution>(m, "LpSolution")
        .def_property_readonly("status",
                               [](const LpSolution& s) {
                                   switch (s.status) {
                                       case LpSolution::Status::optimal: return "optimal";
                                       case LpSolution::Status::infeasible: return "infeasible";
                                       default: return "unbounded";
                                   }
                               })
        .def_readonly("objective", &LpSolution::objective)
        .def_readonly("x", &LpSolution::x)
        .def_readonly("iterations", &LpSolution::iterations)
        .def_readonly("feasibility_gap", &LpSolution::feasibility_gap)
        .def("value", &LpSolution::value, py::arg("model"), py::arg("var_name"))
        .def("soc", &LpSolution::soc, py::arg("model"), py::arg("storage") = 0)
        .def("to_text", [](const LpSolution& s) { return to_text(s); });

    m.def(
        "build_lp",
        [](const std::string& variant, const Profile& demand, const Profile& generation,
           const TechCosts& costs, const std::vector<StorageTech>& storages) {
            return build(lp_variant_from_string(variant), demand, generation, costs, storages);
        },
        py::arg("variant"), py::arg("demand"), py::arg("generation"),
        py::arg("costs") = TechCosts{}, py::arg("storages") = std::vector<StorageTech>{});
    m.def("reduce_to_2var", &reduce_to_2var, py::arg("model"));
    m.def(
        "solve_lp", [](const LpModel& model) { return solve(model); }, py::arg("model"));

    py::class_<BottleneckDiagnostics>(m, "BottleneckDiagnostics")
        .def_readonly("interval", &BottleneckDiagnostics::interval)
        .def_readonly("soc_at_start", &BottleneckDiagnostics::soc_at_start)
        .def_readonly("soc_at_end", &BottleneckDiagnostics::soc_at_end)
        .def_readonly("unutilized_max", &BottleneckDiagnostics::unutilized_max)
        .def_readonly("x_g", &BottleneckDiagnostics::x_g)
        .def_readonly("x_s", &BottleneckDiagnostics::x_s)
        .def_readonly("dxs_dxg", &BottleneckDiagnostics::dxs_dxg)
        .def_readonly("dxs_dxp", &BottleneckDiagnostics::dxs_dxp)
        .def_readonly("gen_sum_expected", &BottleneckDiagnostics::gen_sum_expected)
        .def_readonly("cost_ratio", &BottleneckDiagnostics::cost_ratio)
        .def_readonly("conclusive", &BottleneckDiagnostics::conclusive)
        .def_readonly("note", &BottleneckDiagnostics::note);
    m.def("diagnostics", &diagnostics, py::arg("model"), py::arg("solution"));

    m.def("oracle_enumerate_intervals", &oracle::enumerate_intervals, py::arg("demand"),
          py::arg("generation"), py::arg("x_g"));
    m.def("oracle_greedy_simulate", &oracle::greedy_simulate, py::arg("demand"),
          py::arg("generation"), py::arg("x_g"), py::arg("capacity"),
          py::arg("charge_eff") = 1.0, py::arg("discharge_factor") = 1.0);
    m.def("oracle_min_feasible_capacity", &oracle::min_feasible_capacity, py::arg("demand"),
          py::arg("generation"), py::arg("x_g"), py::arg("charge_eff") = 1.0,
          py::arg("discharge_factor") = 1.0, py::arg("tol") = 1e-7);

#ifdef RE100_VERSION
    m.attr("__version__") = RE100_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
