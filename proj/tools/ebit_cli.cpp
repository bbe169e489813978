// ebit — bipartite-entanglement toolkit, single command-line entry point.
//
// Subcommands: schmidt, convert {check, prob, probe, bounds, catalyst,
// meet-join}, measure {es, eof, ree, rates, temperature}, ppt, distill,
// dilute, teleport, axioms {run, irreversibility}, thermo-map.
//
// Contract: reports go to standard output as JSON (or CSV where noted), with
// every number rounded to 12 significant digits so identical inputs, flags,
// and seed produce byte-identical output. Exit codes: 0 success, 2 input
// validation failure (diagnostic names the violated invariant), 1 internal
// error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebit/ebit.hpp"

namespace {

using ebit::ordered_json;

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

// CSV numbers use the same 12-significant-digit policy as JSON.
std::string csv_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", ebit::jnum(x));
    return buf;
}

ordered_json osc_json(const ebit::SchmidtVector& x) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < x.size(); ++i) a.push_back(ebit::jnum(x[i]));
    return a;
}

ordered_json verdict_json(const ebit::ConversionVerdict& v) {
    ordered_json j;
    j["schema"] = "ebit.convert.check/1";
    j["forward"] = v.forward;
    j["backward"] = v.backward;
    switch (v.classification()) {
        case ebit::Comparability::equivalent: j["classification"] = "equivalent"; break;
        case ebit::Comparability::convertible_forward: j["classification"] = "convertible_forward"; break;
        case ebit::Comparability::convertible_backward: j["classification"] = "convertible_backward"; break;
        case ebit::Comparability::incomparable: j["classification"] = "incomparable"; break;
    }
    j["witness_forward"] = v.witness_forward ? ordered_json(*v.witness_forward) : ordered_json(nullptr);
    j["gap_forward"] = v.gap_forward ? ordered_json(ebit::jnum(*v.gap_forward)) : ordered_json(nullptr);
    j["witness_backward"] =
        v.witness_backward ? ordered_json(*v.witness_backward) : ordered_json(nullptr);
    j["gap_backward"] = v.gap_backward ? ordered_json(ebit::jnum(*v.gap_backward)) : ordered_json(nullptr);
    return j;
}

ordered_json measure_json(const char* kind, const ebit::MeasureResult& r,
                          const ebit::OptimizerOptions& opt) {
    ordered_json j;
    j["schema"] = "ebit.measure/1";
    j["kind"] = kind;
    j["value"] = ebit::jnum(r.value);
    switch (r.method) {
        case ebit::MeasureMethod::closed_form: j["method"] = "closed_form"; break;
        case ebit::MeasureMethod::convex_roof: j["method"] = "convex_roof"; break;
        case ebit::MeasureMethod::relative_entropy_opt: j["method"] = "relative_entropy_opt"; break;
    }
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["upper_witness"] = r.upper_witness ? ordered_json(ebit::jnum(*r.upper_witness)) : ordered_json(nullptr);
    j["restarts"] = opt.restarts;
    j["seed"] = opt.seed;
    return j;
}

// Validation failures (bad files, bad flag values, invariant violations in
// inputs) exit 2 with the invariant named; anything else is an internal
// error and exits 1.
int exit_code_for(const ebit::Error& e) {
    return e.code() == ebit::errc::invariant_violation ? 1 : 2;
}

struct CliError { // wrapper marking an Error as input validation for sure
    ebit::Error inner;
};

// Loading a state file is always input validation, whatever errc the
// constructor raised (e.g. a norm violation arrives as invariant_violation).
ebit::State load_state_arg(const std::string& path) {
    try {
        return ebit::load_state(path);
    } catch (const ebit::Error& e) {
        throw CliError{e};
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ebit — bipartite pure/mixed state entanglement toolkit.\n"
        "Decides deterministic, stochastic, catalytic, and asymptotic LOCC\n"
        "convertibility; computes entanglement measures; simulates distillation,\n"
        "dilution, and teleportation; and property-tests the ordering axioms of\n"
        "entanglement manipulation. State files are JSON; see README."};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    // ---- schmidt -------------------------------------------------------------
    auto* sc_schmidt = app.add_subcommand(
        "schmidt",
        "Schmidt-decompose a bipartite pure state via singular value decomposition; "
        "reports descending squared coefficients, rank, and entropy of entanglement.");
    std::string schmidt_file;
    sc_schmidt->add_option("state", schmidt_file, "pure or schmidt JSON state file")->required();

    // ---- convert ---------------------------------------------------------------
    auto* sc_convert = app.add_subcommand(
        "convert", "LOCC convertibility analyses (majorization of Schmidt coefficients).");
    sc_convert->require_subcommand(1);

    auto* sc_check = sc_convert->add_subcommand(
        "check",
        "Deterministic convertibility in both directions by the prefix-sum "
        "(majorization) criterion, with witness index and gap on failure.");
    std::string check_a, check_b;
    sc_check->add_option("phi", check_a, "source state file")->required();
    sc_check->add_option("psi", check_b, "target state file")->required();

    auto* sc_prob = sc_convert->add_subcommand(
        "prob", "Maximal single-shot conversion probability (minimum of tail-sum ratios).");
    std::string prob_a, prob_b;
    sc_prob->add_option("phi", prob_a, "source state file")->required();
    sc_prob->add_option("psi", prob_b, "target state file")->required();

    auto* sc_probe = sc_convert->add_subcommand(
        "probe",
        "Many-copy probe: single-shot probability of phi^n -> psi^n over a schedule of n, "
        "plus the entropy-ordering verdict for asymptotic accessibility.");
    std::string probe_a, probe_b;
    int probe_n_max = 10;
    sc_probe->add_option("phi", probe_a, "source state file")->required();
    sc_probe->add_option("psi", probe_b, "target state file")->required();
    sc_probe->add_option("--n-max", probe_n_max, "probe n = 1..n_max (default 10)");

    auto* sc_bounds = sc_convert->add_subcommand(
        "bounds",
        "Finite-copy rate bounds at n copies: floor(n*log2(1/a1))/n distillable bits per "
        "copy versus ceil(n*log2 rank)/n dilution ceiling; the gap witnesses finite-copy "
        "irreversibility.");
    std::string bounds_file;
    int bounds_n = 100;
    sc_bounds->add_option("phi", bounds_file, "entangled state file")->required();
    sc_bounds->add_option("--n", bounds_n, "copy count (default 100)");

    auto* sc_catalyst = sc_convert->add_subcommand(
        "catalyst",
        "Grid search for a catalyst eta making phi (x) eta -> psi (x) eta deterministic "
        "(rank-2 line scan, then rank-3 simplex); absence of a hit is not a proof of "
        "nonexistence.");
    std::string cat_a, cat_b;
    int cat_max_rank = 3, cat_grid = 2000, cat_grid3 = 60;
    sc_catalyst->add_option("phi", cat_a, "source state file")->required();
    sc_catalyst->add_option("psi", cat_b, "target state file")->required();
    sc_catalyst->add_option("--max-rank", cat_max_rank, "largest catalyst rank to scan (default 3)");
    sc_catalyst->add_option("--grid", cat_grid, "rank-2 grid points (default 2000)");
    sc_catalyst->add_option("--grid-3d", cat_grid3, "rank-3 simplex grid per axis (default 60)");

    auto* sc_meet = sc_convert->add_subcommand(
        "meet-join",
        "Common source and common sink: a state converting to both inputs (prefix-sum "
        "pointwise minimum) and one both inputs convert to (least concave majorant).");
    std::string meet_a, meet_b;
    sc_meet->add_option("phi", meet_a, "first state file")->required();
    sc_meet->add_option("psi", meet_b, "second state file")->required();

    // ---- measure ---------------------------------------------------------------
    auto* sc_measure = app.add_subcommand(
        "measure",
        "Entanglement measures. Use a nested subcommand (es, eof, ree, rates, temperature) "
        "or --kind with the same names.");
    std::string measure_kind, measure_file;
    sc_measure->add_option("--kind", measure_kind, "measure kind: es|eof|ree|rates|temperature");
    sc_measure->add_option("state", measure_file, "state file (with --kind)");
    ebit::OptimizerOptions opt_common;
    int ree_terms = 64;
    double temp_ec = 0.0, temp_ed = 0.0, temp_se = 0.0;

    auto add_opt_flags = [&](CLI::App* c) {
        c->add_option("--restarts", opt_common.restarts, "optimizer restarts (default 32)");
        c->add_option("--iters", opt_common.iterations, "iterations per restart (default 500)");
        c->add_option("--tol", opt_common.tol, "convergence tolerance (default 1e-7)");
        c->add_option("--seed", opt_common.seed, "random seed (default 0)");
    };

    auto* sc_es = sc_measure->add_subcommand(
        "es", "Entropy of entanglement of a pure state: von Neumann entropy of a reduction.");
    std::string es_file;
    sc_es->add_option("state", es_file, "pure state file")->required();

    auto* sc_eof = sc_measure->add_subcommand(
        "eof",
        "Entanglement of formation upper estimate by convex-roof minimization over "
        "ensemble decompositions (isometry parameterization, seeded restarts).");
    std::string eof_file;
    sc_eof->add_option("state", eof_file, "mixed (or pure) state file")->required();
    add_opt_flags(sc_eof);

    auto* sc_ree = sc_measure->add_subcommand(
        "ree",
        "Relative entropy of entanglement upper estimate: minimize S(rho||sigma) over "
        "convex combinations of product pure states (seeded derivative-free refinement).");
    std::string ree_file;
    sc_ree->add_option("state", ree_file, "state file")->required();
    sc_ree->add_option("--terms", ree_terms, "separable mixture terms (default 64)");
    add_opt_flags(sc_ree);

    auto* sc_rates = sc_measure->add_subcommand(
        "rates",
        "Asymptotic distillable entanglement and entanglement cost of a pure state "
        "(both equal the entropy of entanglement).");
    std::string rates_file;
    sc_rates->add_option("state", rates_file, "pure state file")->required();

    auto* sc_temp = sc_measure->add_subcommand(
        "temperature",
        "First-law bookkeeping: bound entanglement E_b = E_C - E_D and temperature "
        "T_e = E_b / S_e for a caller-chosen entropy S_e > 0.");
    sc_temp->add_option("--cost", temp_ec, "entanglement cost E_C")->required();
    sc_temp->add_option("--distillable", temp_ed, "distillable entanglement E_D")->required();
    sc_temp->add_option("--entropy", temp_se, "entropy S_e (> 0)")->required();

    // ---- ppt ---------------------------------------------------------------------
    auto* sc_ppt = app.add_subcommand(
        "ppt",
        "Partial-transpose test: minimum eigenvalue of rho^T_A, PPT/NPT verdict, "
        "separability (decisive only on 2x2 and 2x3), and distillability screen.");
    std::string ppt_file;
    sc_ppt->add_option("state", ppt_file, "state file (pure states are projected)")->required();

    // ---- distill -------------------------------------------------------------------
    auto* sc_distill = app.add_subcommand(
        "distill",
        "Distillation statistics for n copies of a two-term state with larger branch "
        "probability alpha-sq: outcome distribution p_k, expected yield in bits, and the "
        "n*H(alpha-sq) ceiling. Optional typical-set bracket, post-measurement-state "
        "verification, and seeded sampling.");
    double di_alpha = 0.5;
    int di_n = 10, di_shots = 0, di_verify_k = -1;
    std::uint64_t di_seed = 0;
    std::string di_format = "json", di_schedule;
    double di_delta = -1.0;
    sc_distill->add_option("--alpha-sq", di_alpha, "larger squared Schmidt coefficient, in (0,1)")
        ->required();
    sc_distill->add_option("--n", di_n, "number of copies (default 10)");
    sc_distill->add_option("--shots", di_shots, "sampled measurement shots (default 0)");
    sc_distill->add_option("--seed", di_seed, "sampling seed (default 0)");
    sc_distill->add_option("--delta", di_delta, "also report the typical-set window of half-width delta");
    sc_distill->add_option("--verify-sk", di_verify_k,
                           "verify the post-measurement state for outcome k is maximally "
                           "entangled of rank C(n,k) (needs n <= 12)");
    sc_distill->add_option("--format", di_format, "json (default) or csv");
    sc_distill->add_option("--n-schedule", di_schedule,
                           "comma-separated n list for csv convergence series (default: --n)");

    // ---- dilute ---------------------------------------------------------------------
    auto* sc_dilute = app.add_subcommand(
        "dilute",
        "Expected singlet cost of preparing n copies of a two-term state by teleportation "
        "of the binomial post-measurement states; approaches n*H(alpha-sq), mirroring the "
        "distillation yield.");
    double dl_alpha = 0.5;
    int dl_n = 10;
    sc_dilute->add_option("--alpha-sq", dl_alpha, "larger squared Schmidt coefficient, in (0,1)")
        ->required();
    sc_dilute->add_option("--n", dl_n, "number of copies (default 10)");

    // ---- teleport ---------------------------------------------------------------------
    auto* sc_teleport = app.add_subcommand(
        "teleport",
        "Teleport alpha|0> + beta|1> through a shared singlet: all four Bell outcomes with "
        "probabilities, corrections, and post-correction fidelities; --sample draws one.");
    double tp_alpha = 0.0, tp_beta = 0.0;
    bool tp_sample = false;
    std::uint64_t tp_seed = 0, tp_shot = 0;
    sc_teleport->add_option("--alpha", tp_alpha, "real amplitude of |0>")->required();
    sc_teleport->add_option("--beta", tp_beta, "real amplitude of |1>")->required();
    sc_teleport->add_flag("--sample", tp_sample, "draw a single outcome instead of the table");
    sc_teleport->add_option("--seed", tp_seed, "sampling seed (default 0)");
    sc_teleport->add_option("--shot", tp_shot, "shot index within the seed's stream (default 0)");

    // ---- axioms ----------------------------------------------------------------------
    auto* sc_axioms = app.add_subcommand(
        "axioms", "Property-test the ordering axioms of entanglement manipulation.");
    sc_axioms->require_subcommand(1);

    auto* sc_ax_run = sc_axioms->add_subcommand(
        "run",
        "Run seeded property trials for one axiom (A4.1..A4.8, A4.5a/A4.5b); violations "
        "come with a counterexample re-checkable through the conversion primitives.");
    std::string ax_name;
    std::uint64_t ax_trials = 1000, ax_seed = 0;
    int ax_dim_min = 2, ax_dim_max = 4;
    std::string ax_dist = "dirichlet";
    sc_ax_run->add_option("--axiom", ax_name, "axiom id, e.g. A4.4")->required();
    sc_ax_run->add_option("--trials", ax_trials, "number of trials (default 1000)");
    sc_ax_run->add_option("--seed", ax_seed, "sampler seed (default 0)");
    sc_ax_run->add_option("--dim-min", ax_dim_min, "minimum sampled Schmidt rank (default 2)");
    sc_ax_run->add_option("--dim-max", ax_dim_max, "maximum sampled Schmidt rank (default 4)");
    sc_ax_run->add_option("--distribution", ax_dist, "dirichlet (default) or haar");

    auto* sc_ax_irr = sc_axioms->add_subcommand(
        "irreversibility",
        "Scan random two-term pairs for reversible copy counts (phi^n equivalent to "
        "psi^m): a closed-form log-space certificate shows none exist nontrivially.");
    int irr_pairs = 100, irr_nmax = 50, irr_mmax = 50;
    std::uint64_t irr_seed = 0;
    sc_ax_irr->add_option("--pairs", irr_pairs, "random pairs to scan (default 100)");
    sc_ax_irr->add_option("--n-max", irr_nmax, "largest n (default 50)");
    sc_ax_irr->add_option("--m-max", irr_mmax, "largest m (default 50)");
    sc_ax_irr->add_option("--seed", irr_seed, "sampler seed (default 0)");

    // ---- thermo-map --------------------------------------------------------------------
    auto* sc_thermo = app.add_subcommand(
        "thermo-map",
        "Sample pure states and emit (log2 joint dimension, entropy of entanglement) "
        "points; CSV by default for plotting.");
    int th_count = 1000;
    std::uint64_t th_seed = 0;
    int th_dim_min = 2, th_dim_max = 4;
    std::string th_format = "csv";
    sc_thermo->add_option("--count", th_count, "number of sampled points (default 1000)");
    sc_thermo->add_option("--seed", th_seed, "sampler seed (default 0)");
    sc_thermo->add_option("--dim-min", th_dim_min, "minimum local dimension (default 2)");
    sc_thermo->add_option("--dim-max", th_dim_max, "maximum local dimension (default 4)");
    sc_thermo->add_option("--format", th_format, "csv (default) or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        // schmidt ------------------------------------------------------------------
        if (app.got_subcommand(sc_schmidt)) {
            ebit::State s = load_state_arg(schmidt_file);
            ebit::SchmidtVector x = ebit::osc_of_state(s);
            ordered_json j;
            j["schema"] = "ebit.schmidt/1";
            j["coeffs"] = osc_json(x);
            j["rank"] = x.rank();
            j["entropy"] = ebit::jnum(ebit::entropy_of(x));
            emit(j);
            return 0;
        }

        // convert ------------------------------------------------------------------
        if (app.got_subcommand(sc_convert)) {
            if (sc_convert->got_subcommand(sc_check)) {
                auto a = ebit::osc_of_state(load_state_arg(check_a));
                auto b = ebit::osc_of_state(load_state_arg(check_b));
                emit(verdict_json(ebit::nielsen_convertible(a, b)));
                return 0;
            }
            if (sc_convert->got_subcommand(sc_prob)) {
                auto a = ebit::osc_of_state(load_state_arg(prob_a));
                auto b = ebit::osc_of_state(load_state_arg(prob_b));
                ordered_json j;
                j["schema"] = "ebit.convert.prob/1";
                j["probability"] = ebit::jnum(ebit::stochastic_probability(a, b));
                emit(j);
                return 0;
            }
            if (sc_convert->got_subcommand(sc_probe)) {
                auto a = ebit::osc_of_state(load_state_arg(probe_a));
                auto b = ebit::osc_of_state(load_state_arg(probe_b));
                if (probe_n_max < 1)
                    ebit::fail(ebit::errc::out_of_range, "probe: --n-max must be >= 1");
                std::vector<int> schedule;
                for (int n = 1; n <= probe_n_max; ++n) schedule.push_back(n);
                ebit::ProbeReport rep = ebit::asymptotic_probe(a, b, schedule);
                ordered_json pts = ordered_json::array();
                for (const auto& p : rep.points)
                    pts.push_back({{"n", p.n}, {"probability", ebit::jnum(p.probability)}});
                ordered_json j;
                j["schema"] = "ebit.convert.probe/1";
                j["points"] = std::move(pts);
                j["entropy_phi"] = ebit::jnum(rep.entropy_phi);
                j["entropy_psi"] = ebit::jnum(rep.entropy_psi);
                j["verdict"] = rep.verdict;
                j["rank_ordering_agrees"] = rep.rank_ordering_agrees;
                emit(j);
                return 0;
            }
            if (sc_convert->got_subcommand(sc_bounds)) {
                auto a = ebit::osc_of_state(load_state_arg(bounds_file));
                ebit::RateBounds rb = ebit::deterministic_rate_bounds(a, bounds_n);
                ordered_json j;
                j["schema"] = "ebit.convert.bounds/1";
                j["n"] = rb.n;
                j["lower"] = ebit::jnum(rb.lower);
                j["upper"] = ebit::jnum(rb.upper);
                j["entropy"] = ebit::jnum(ebit::entropy_of(a));
                emit(j);
                return 0;
            }
            if (sc_convert->got_subcommand(sc_catalyst)) {
                auto a = ebit::osc_of_state(load_state_arg(cat_a));
                auto b = ebit::osc_of_state(load_state_arg(cat_b));
                auto eta = ebit::find_catalyst(a, b, cat_max_rank, cat_grid, cat_grid3);
                ordered_json j;
                j["schema"] = "ebit.convert.catalyst/1";
                j["found"] = bool(eta);
                j["catalyst"] = eta ? osc_json(*eta) : ordered_json(nullptr);
                emit(j);
                return 0;
            }
            if (sc_convert->got_subcommand(sc_meet)) {
                auto a = ebit::osc_of_state(load_state_arg(meet_a));
                auto b = ebit::osc_of_state(load_state_arg(meet_b));
                auto [source, sink] = ebit::common_source_sink(a, b);
                ordered_json j;
                j["schema"] = "ebit.convert.meet-join/1";
                j["source"] = osc_json(source);
                j["sink"] = osc_json(sink);
                emit(j);
                return 0;
            }
        }

        // measure ------------------------------------------------------------------
        if (app.got_subcommand(sc_measure)) {
            std::string kind = measure_kind;
            std::string file = measure_file;
            if (sc_measure->got_subcommand(sc_es)) kind = "es", file = es_file;
            else if (sc_measure->got_subcommand(sc_eof)) kind = "eof", file = eof_file;
            else if (sc_measure->got_subcommand(sc_ree)) kind = "ree", file = ree_file;
            else if (sc_measure->got_subcommand(sc_rates)) kind = "rates", file = rates_file;
            else if (sc_measure->got_subcommand(sc_temp)) kind = "temperature";
            if (kind.empty())
                ebit::fail(ebit::errc::parse_error,
                           "measure: pass a subcommand (es|eof|ree|rates|temperature) or --kind");

            if (kind == "es") {
                if (file.empty()) ebit::fail(ebit::errc::parse_error, "measure es: missing state file");
                ebit::State s = load_state_arg(file);
                ebit::MeasureResult r =
                    std::holds_alternative<ebit::DensityMatrix>(s)
                        ? ebit::entropy_of_entanglement(std::get<ebit::DensityMatrix>(s))
                        : ebit::entropy_of_entanglement(ebit::pure_of_state(s));
                emit(measure_json("es", r, {}));
                return 0;
            }
            if (kind == "eof") {
                if (file.empty()) ebit::fail(ebit::errc::parse_error, "measure eof: missing state file");
                ebit::DensityMatrix rho = ebit::density_of_state(load_state_arg(file));
                emit(measure_json("eof", ebit::eof_mixed(rho, opt_common), opt_common));
                return 0;
            }
            if (kind == "ree") {
                if (file.empty()) ebit::fail(ebit::errc::parse_error, "measure ree: missing state file");
                ebit::DensityMatrix rho = ebit::density_of_state(load_state_arg(file));
                emit(measure_json(
                    "ree", ebit::relative_entropy_of_entanglement(rho, opt_common, ree_terms),
                    opt_common));
                return 0;
            }
            if (kind == "rates") {
                if (file.empty())
                    ebit::fail(ebit::errc::parse_error, "measure rates: missing state file");
                ebit::SchmidtVector x = ebit::osc_of_state(load_state_arg(file));
                ebit::PureRates pr = ebit::pure_rates(x);
                ordered_json j;
                j["schema"] = "ebit.measure/1";
                j["kind"] = "rates";
                j["distillable"] = ebit::jnum(pr.distillable);
                j["cost"] = ebit::jnum(pr.cost);
                j["method"] = "closed_form";
                emit(j);
                return 0;
            }
            if (kind == "temperature") {
                double eb = ebit::first_law_bound_entanglement(temp_ec, temp_ed);
                double te = ebit::entanglement_temperature(temp_ec, temp_ed, temp_se);
                ordered_json j;
                j["schema"] = "ebit.measure/1";
                j["kind"] = "temperature";
                j["bound_entanglement"] = ebit::jnum(eb);
                j["temperature"] = ebit::jnum(te);
                j["method"] = "closed_form";
                emit(j);
                return 0;
            }
            ebit::fail(ebit::errc::parse_error, "measure: unknown kind \"" + kind + "\"");
        }

        // ppt ----------------------------------------------------------------------
        if (app.got_subcommand(sc_ppt)) {
            ebit::DensityMatrix rho = ebit::density_of_state(load_state_arg(ppt_file));
            ebit::PptReport rep = ebit::ppt_report(rho);
            ordered_json j;
            j["schema"] = "ebit.ppt/1";
            j["min_pt_eigenvalue"] = ebit::jnum(rep.min_pt_eigenvalue);
            j["is_ppt"] = rep.is_ppt;
            j["boundary"] = rep.boundary;
            switch (rep.separability) {
                case ebit::Separability::separable: j["separability"] = "separable"; break;
                case ebit::Separability::entangled: j["separability"] = "entangled"; break;
                case ebit::Separability::undetermined: j["separability"] = "undetermined"; break;
            }
            j["distillability"] = rep.distillability == ebit::Distillability::not_distillable
                                      ? "not_distillable"
                                      : "npt_candidate";
            emit(j);
            return 0;
        }

        // distill ------------------------------------------------------------------
        if (app.got_subcommand(sc_distill)) {
            if (di_format == "csv") {
                std::vector<int> ns;
                if (di_schedule.empty()) {
                    ns.push_back(di_n);
                } else {
                    std::string tok;
                    for (char c : di_schedule + ",") {
                        if (c == ',') {
                            if (!tok.empty()) ns.push_back(std::stoi(tok));
                            tok.clear();
                        } else {
                            tok += c;
                        }
                    }
                }
                std::cout << "n,expected_yield_per_copy,entropy_bound_per_copy\n";
                for (int n : ns) {
                    ebit::DistillationReport r = ebit::distill_statistics(di_alpha, n);
                    std::cout << n << "," << csv_num(r.expected_yield_bits / n) << ","
                              << csv_num(r.entropy_bound / n) << "\n";
                }
                return 0;
            }
            if (di_format != "json")
                ebit::fail(ebit::errc::parse_error, "distill: --format must be json or csv");
            ebit::DistillationReport r = ebit::distill_statistics(di_alpha, di_n);
            ordered_json j;
            j["schema"] = "ebit.distill/1";
            j["n"] = r.n;
            j["alpha_sq"] = ebit::jnum(r.alpha_sq);
            j["expected_yield_bits"] = ebit::jnum(r.expected_yield_bits);
            j["entropy_bound"] = ebit::jnum(r.entropy_bound);
            ordered_json pk = ordered_json::array();
            for (size_t k = 0; k < r.p.size(); ++k)
                pk.push_back({{"k", int(k)}, {"p", ebit::jnum(r.p[k])}});
            j["p_k"] = std::move(pk);
            if (di_delta > 0.0) {
                ebit::TypicalSetReport t = ebit::typical_set_report(di_alpha, di_n, di_delta);
                j["typical_set"] = {{"delta", ebit::jnum(t.delta)},
                                    {"k_lo", t.k_lo},
                                    {"k_hi", t.k_hi},
                                    {"mass", ebit::jnum(t.mass)},
                                    {"epsilon", ebit::jnum(t.epsilon)},
                                    {"size_log2", ebit::jnum(t.size_log2)},
                                    {"delta_induced", ebit::jnum(t.delta_induced)},
                                    {"lower_bound_log2", ebit::jnum(t.lower_bound_log2)},
                                    {"upper_bound_log2", ebit::jnum(t.upper_bound_log2)},
                                    {"within_bounds", t.within_bounds}};
            }
            if (di_verify_k >= 0) {
                ebit::SkVerification v = ebit::verify_sk_maximally_entangled(di_alpha, di_n, di_verify_k);
                j["sk_verification"] = {{"k", v.k},
                                        {"expected_rank", v.expected_rank},
                                        {"rank", v.rank},
                                        {"entropy", ebit::jnum(v.entropy)},
                                        {"coeff_spread", ebit::jnum(v.coeff_spread)},
                                        {"maximally_entangled", v.ok}};
            }
            if (di_shots > 0) {
                std::vector<double> ys = ebit::distill_sample(di_alpha, di_n, di_shots, di_seed);
                ordered_json samples = ordered_json::array();
                for (double y : ys) samples.push_back(ebit::jnum(y));
                j["seed"] = di_seed;
                j["samples"] = std::move(samples);
            }
            emit(j);
            return 0;
        }

        // dilute -------------------------------------------------------------------
        if (app.got_subcommand(sc_dilute)) {
            double cost = ebit::dilution_cost(dl_alpha, dl_n);
            ordered_json j;
            j["schema"] = "ebit.dilute/1";
            j["n"] = dl_n;
            j["alpha_sq"] = ebit::jnum(dl_alpha);
            j["cost_bits"] = ebit::jnum(cost);
            j["cost_per_copy"] = ebit::jnum(cost / dl_n);
            emit(j);
            return 0;
        }

        // teleport -----------------------------------------------------------------
        if (app.got_subcommand(sc_teleport)) {
            auto outcome_json = [](const ebit::TeleportOutcome& o) {
                const char* name = o.outcome == ebit::Bell::psi_minus  ? "psi_minus"
                                   : o.outcome == ebit::Bell::psi_plus ? "psi_plus"
                                   : o.outcome == ebit::Bell::phi_plus ? "phi_plus"
                                                                       : "phi_minus";
                ordered_json j;
                j["bell_result"] = name;
                j["probability"] = ebit::jnum(o.probability);
                j["correction"] = o.correction;
                j["bob_state"] = ordered_json::array(
                    {ordered_json::array({ebit::jnum(o.bob_state(0).real()),
                                          ebit::jnum(o.bob_state(0).imag())}),
                     ordered_json::array({ebit::jnum(o.bob_state(1).real()),
                                          ebit::jnum(o.bob_state(1).imag())})});
                j["fidelity"] = ebit::jnum(o.fidelity);
                return j;
            };
            ordered_json j;
            j["schema"] = "ebit.teleport/1";
            j["alpha"] = ebit::jnum(tp_alpha);
            j["beta"] = ebit::jnum(tp_beta);
            try { // alpha/beta come from flags, so any rejection is input validation
                if (tp_sample) {
                    j["seed"] = tp_seed;
                    j["shot"] = tp_shot;
                    j["outcome"] = outcome_json(ebit::teleport_sample(tp_alpha, tp_beta, tp_seed, tp_shot));
                } else {
                    ordered_json outs = ordered_json::array();
                    for (const auto& o : ebit::teleport(tp_alpha, tp_beta)) outs.push_back(outcome_json(o));
                    j["outcomes"] = std::move(outs);
                }
            } catch (const ebit::Error& e) {
                throw CliError{e};
            }
            emit(j);
            return 0;
        }

        // axioms -------------------------------------------------------------------
        if (app.got_subcommand(sc_axioms)) {
            if (sc_axioms->got_subcommand(sc_ax_run)) {
                auto axiom = ebit::axiom_from_name(ax_name);
                if (!axiom)
                    ebit::fail(ebit::errc::parse_error,
                               "axioms run: unknown axiom \"" + ax_name +
                                   "\" (expected A4.1..A4.8, A4.5a, A4.5b)");
                ebit::StateSampler sampler;
                sampler.seed = ax_seed;
                sampler.dim_min = ax_dim_min;
                sampler.dim_max = ax_dim_max;
                if (ax_dist == "haar") sampler.distribution = ebit::Distribution::haar_amplitudes;
                else if (ax_dist != "dirichlet")
                    ebit::fail(ebit::errc::parse_error,
                               "axioms run: --distribution must be dirichlet or haar");
                ebit::AxiomReport rep = ebit::run_axiom(*axiom, sampler, ax_trials);
                ordered_json j;
                j["schema"] = "ebit.axioms.run/1";
                j["axiom"] = ebit::axiom_name(rep.axiom_id);
                j["trials"] = rep.trials;
                j["status"] = rep.status == ebit::AxiomStatus::held       ? "held"
                              : rep.status == ebit::AxiomStatus::violated ? "violated"
                                                                          : "vacuous";
                j["seed"] = rep.seed;
                j["vacuous_trials"] = rep.vacuous_trials;
                j["dim_regime"] = rep.dim_regime;
                if (rep.counterexample) {
                    ordered_json states = ordered_json::array();
                    for (const auto& s : rep.counterexample->states) states.push_back(osc_json(s));
                    j["counterexample"] = {{"states", std::move(states)},
                                           {"note", rep.counterexample->note}};
                } else {
                    j["counterexample"] = nullptr;
                }
                emit(j);
                return 0;
            }
            if (sc_axioms->got_subcommand(sc_ax_irr)) {
                ebit::StateSampler sampler;
                sampler.seed = irr_seed;
                ebit::IrreversibilityReport rep =
                    ebit::irreversibility_search(sampler, irr_nmax, irr_mmax, irr_pairs);
                ordered_json j;
                j["schema"] = "ebit.axioms.irreversibility/1";
                j["pairs"] = rep.pairs;
                j["n_max"] = rep.n_max;
                j["m_max"] = rep.m_max;
                j["nontrivial_reversible"] = rep.nontrivial_reversible;
                j["trivial_draws"] = rep.trivial_draws;
                j["seed"] = rep.seed;
                emit(j);
                return 0;
            }
        }

        // thermo-map -----------------------------------------------------------------
        if (app.got_subcommand(sc_thermo)) {
            ebit::StateSampler sampler;
            sampler.seed = th_seed;
            sampler.dim_min = th_dim_min;
            sampler.dim_max = th_dim_max;
            std::vector<ebit::ThermoPoint> pts = ebit::thermo_map(sampler, th_count);
            if (th_format == "csv") {
                std::cout << "log2_dim,entropy\n";
                for (const auto& p : pts)
                    std::cout << csv_num(p.log2_dim) << "," << csv_num(p.entropy) << "\n";
                return 0;
            }
            if (th_format != "json")
                ebit::fail(ebit::errc::parse_error, "thermo-map: --format must be csv or json");
            ordered_json rows = ordered_json::array();
            for (const auto& p : pts)
                rows.push_back({{"log2_dim", ebit::jnum(p.log2_dim)}, {"entropy", ebit::jnum(p.entropy)}});
            ordered_json j;
            j["schema"] = "ebit.thermo-map/1";
            j["seed"] = th_seed;
            j["points"] = std::move(rows);
            emit(j);
            return 0;
        }

        std::cerr << "error: no subcommand dispatched\n";
        return 1;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.inner.what() << "\n";
        return 2;
    } catch (const ebit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
