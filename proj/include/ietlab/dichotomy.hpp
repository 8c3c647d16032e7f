#pragma once

#include <string>

#include <json.hpp>

#include "ietlab/correlate.hpp"

namespace ietlab {

// Qualitative dichotomy experiment: matched observables on a rotation-class
// arm and a non-rotation-class arm, fitted against the two decay shapes.
struct DichotomyConfig {
    DichotomyConfig(IET rotation, IET non_rotation)
        : rotation_arm(std::move(rotation)), non_rotation_arm(std::move(non_rotation)) {}
    IET rotation_arm;
    IET non_rotation_arm;
    Observable f, g;
    std::vector<std::size_t> n_grid;
    std::string rotation_id = "rotation-arm";
    std::string non_rotation_id = "non-rotation-arm";
};

enum class DichotomyVerdict { Pass, Inconclusive, Fail };

struct DichotomyReport {
    DecaySeries rotation, non_rotation;
    FitResult rot_power, rot_log, nonrot_power, nonrot_log;
    DichotomyVerdict verdict = DichotomyVerdict::Fail;
    double exponent_gap = 0;  // nonrot power exponent minus rot power exponent

    nlohmann::json to_json() const {
        auto fit_json = [](const FitResult& f) {
            return nlohmann::json{{"model", f.model == DecayModel::PowerLaw ? "power" : "log"},
                                  {"exponent", f.exponent},
                                  {"residual", f.residual}};
        };
        auto series_json = [](const DecaySeries& s) {
            return nlohmann::json{
                {"N", s.n_grid}, {"C_N", s.c_vals}, {"Q_N", s.q_vals}, {"iet", s.iet_id}};
        };
        const char* v = verdict == DichotomyVerdict::Pass
                            ? "PASS"
                            : (verdict == DichotomyVerdict::Inconclusive ? "INCONCLUSIVE"
                                                                         : "FAIL");
        return nlohmann::json{{"rotation", series_json(rotation)},
                              {"non_rotation", series_json(non_rotation)},
                              {"rotation_fit_power", fit_json(rot_power)},
                              {"rotation_fit_log", fit_json(rot_log)},
                              {"non_rotation_fit_power", fit_json(nonrot_power)},
                              {"non_rotation_fit_log", fit_json(nonrot_log)},
                              {"exponent_gap", exponent_gap},
                              {"verdict", v}};
    }
};

inline DichotomyReport dichotomy_run(const DichotomyConfig& cfg,
                                     double inconclusive_gap = 0.02) {
    DichotomyReport rep;
    rep.rotation = cesaro_decay(cfg.rotation_arm, cfg.f, cfg.g, cfg.n_grid);
    rep.rotation.iet_id = cfg.rotation_id;
    rep.non_rotation = cesaro_decay(cfg.non_rotation_arm, cfg.f, cfg.g, cfg.n_grid);
    rep.non_rotation.iet_id = cfg.non_rotation_id;
    rep.rot_power = fit_decay(rep.rotation, DecayModel::PowerLaw);
    rep.rot_log = fit_decay(rep.rotation, DecayModel::LogPower);
    rep.nonrot_power = fit_decay(rep.non_rotation, DecayModel::PowerLaw);
    rep.nonrot_log = fit_decay(rep.non_rotation, DecayModel::LogPower);
    rep.exponent_gap = rep.nonrot_power.exponent - rep.rot_power.exponent;
    bool ordering = rep.exponent_gap > inconclusive_gap;
    bool models = rep.nonrot_power.residual <= rep.nonrot_log.residual &&
                  rep.rot_log.residual <= rep.rot_power.residual;
    if (std::abs(rep.exponent_gap) <= inconclusive_gap)
        rep.verdict = DichotomyVerdict::Inconclusive;
    else if (ordering && models)
        rep.verdict = DichotomyVerdict::Pass;
    else
        rep.verdict = DichotomyVerdict::Fail;
    return rep;
}

}  // namespace ietlab
