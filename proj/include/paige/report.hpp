#ifndef PAIGE_REPORT_HPP
#define PAIGE_REPORT_HPP

#include <string>
#include <utility>

#include <json.hpp>

namespace paige {

/// Machine-parseable command report, schema "report/1". Counterexamples are
/// always reported in 8-tuple form so they stay meaningful without the
/// cache at hand.
class Report {
public:
    explicit Report(std::string command) {
        j_["schema"] = "report/1";
        j_["command"] = std::move(command);
        j_["parameters"] = nlohmann::json::object();
        j_["verdicts"] = nlohmann::json::array();
        j_["counterexamples"] = nlohmann::json::array();
        j_["timings"] = nlohmann::json::object();
    }

    void param(const std::string& key, nlohmann::json v) { j_["parameters"][key] = std::move(v); }

    void verdict(const std::string& check, bool pass, nlohmann::json details = nlohmann::json::object()) {
        details["check"] = check;
        details["pass"] = pass;
        j_["verdicts"].push_back(std::move(details));
        if (!pass) failed_ = true;
    }

    void counterexample(const std::string& check, nlohmann::json data) {
        data["check"] = check;
        j_["counterexamples"].push_back(std::move(data));
    }

    void timing(const std::string& key, double ms) { j_["timings"][key] = ms; }

    void set_error(const std::string& what) {
        j_["error"] = what;
        failed_ = true;
    }

    bool all_pass() const { return !failed_; }
    nlohmann::json& json() { return j_; }
    const nlohmann::json& json() const { return j_; }
    std::string dump() const { return j_.dump(2) + "\n"; }

private:
    nlohmann::json j_;
    bool failed_ = false;
};

} // namespace paige

#endif
