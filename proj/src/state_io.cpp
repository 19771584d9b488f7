#include "qcorr/state_io.hpp"

#include <fstream>

#include <json.hpp>

#include "qcorr/errors.hpp"

namespace qcorr {

using nlohmann::json;

DensityMatrix load_state_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StateFileError("cannot open state file: " + path);

    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw StateFileError("state file is not valid JSON: " + std::string(e.what()));
    }

    try {
        const auto d_a = j.at("d_a").get<std::size_t>();
        const auto d_b = j.at("d_b").get<std::size_t>();
        const auto& re = j.at("re");
        const auto& im = j.at("im");

        const std::size_t n = d_a * d_b;
        if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n)
            throw StateFileError("state file: re/im must be " + std::to_string(n) + "x" +
                                 std::to_string(n) + " row-major arrays");

        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& re_row = re.at(i);
            const auto& im_row = im.at(i);
            if (re_row.size() != n || im_row.size() != n)
                throw StateFileError("state file: row " + std::to_string(i) +
                                     " has the wrong length");
            for (std::size_t k = 0; k < n; ++k)
                m(i, k) = cdouble(re_row.at(k).get<double>(), im_row.at(k).get<double>());
        }
        return validate(m, {d_a, d_b});
    } catch (const json::exception& e) {
        throw StateFileError("state file is missing or mistypes a field: " +
                             std::string(e.what()));
    }
}

void save_state_json(const DensityMatrix& rho, const std::string& path) {
    const std::size_t n = rho.dim();
    const ComplexMatrix& m = rho.matrix();

    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json re_row = json::array(), im_row = json::array();
        for (std::size_t k = 0; k < n; ++k) {
            re_row.push_back(m(i, k).real());
            im_row.push_back(m(i, k).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }

    json j{{"d_a", rho.dims().d_a}, {"d_b", rho.dims().d_b}, {"re", std::move(re)},
           {"im", std::move(im)}};

    std::ofstream out(path);
    if (!out) throw StateFileError("cannot write state file: " + path);
    out << j.dump(1) << '\n';
    if (!out) throw StateFileError("failed while writing state file: " + path);
}

std::string report_json(const MeasureReport& rep) {
    json j{{"mutual_info", rep.mutual_info},
           {"ree", rep.ree_value},
           {"ree_gap", rep.ree_gap},
           {"ree_iterations", rep.ree_iterations},
           {"ree_converged", rep.ree_converged},
           {"psi", rep.psi},
           {"psi_raw", rep.psi_raw},
           {"c1", rep.c1},
           {"c2", rep.c2},
           {"negativity", rep.negativity},
           {"ppt", rep.ppt}};
    j["chi_projective"] = rep.chi_projective ? json(*rep.chi_projective) : json(nullptr);
    j["chi_povm"] = rep.chi_povm ? json(*rep.chi_povm) : json(nullptr);
    return j.dump(2);
}

}  // namespace qcorr
