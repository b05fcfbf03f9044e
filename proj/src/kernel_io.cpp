#include "qm/kernel_io.hpp"

#include "qm/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace qm {

StepKernel read_kernel_text(std::istream& in) {
    int k = 0;
    if (!(in >> k) || k < 1) throw InvalidInput("kernel text: expected a positive part count");
    std::vector<double> v(static_cast<std::size_t>(k) * k);
    for (auto& x : v)
        if (!(in >> x)) throw InvalidInput("kernel text: expected " + std::to_string(k * k) + " values");
    std::string extra;
    if (in >> extra) throw InvalidInput("kernel text: trailing content '" + extra + "'");
    return StepKernel::equal(k, std::move(v));
}

void write_kernel_text(std::ostream& out, const StepKernel& w) {
    if (!w.equal_weights()) throw InvalidInput("kernel text format needs equal weights");
    const int k = w.parts();
    out << k << '\n' << std::setprecision(17);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) out << (j ? " " : "") << w(i, j);
        out << '\n';
    }
}

nlohmann::json kernel_to_json(const StepFunction& w) {
    const int k = w.parts();
    nlohmann::json values = nlohmann::json::array();
    for (int i = 0; i < k; ++i) {
        auto r = w.row(i);
        values.push_back(std::vector<double>(r.begin(), r.end()));
    }
    nlohmann::json j{{"k", k}, {"values", std::move(values)}};
    if (!w.equal_weights()) j["weights"] = std::vector<double>(w.weights().begin(), w.weights().end());
    return j;
}

StepKernel kernel_from_json(const nlohmann::json& j) {
    try {
        const int k = j.at("k").get<int>();
        if (k < 1) throw InvalidInput("kernel JSON: k must be positive");
        const auto& rows = j.at("values");
        if (!rows.is_array() || static_cast<int>(rows.size()) != k) throw InvalidInput("kernel JSON: expected k rows");
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(k) * k);
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != k) throw InvalidInput("kernel JSON: expected k values per row");
            for (const auto& x : row) v.push_back(x.get<double>());
        }
        std::vector<double> weights;
        if (j.contains("weights")) weights = j.at("weights").get<std::vector<double>>();
        return StepKernel(std::move(weights), std::move(v));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("kernel JSON: ") + e.what());
    }
}

StepKernel parse_kernel(const std::string& contents) {
    const auto first = contents.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && contents[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(contents);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("kernel JSON: ") + e.what());
        }
        return kernel_from_json(j);
    }
    std::istringstream in(contents);
    return read_kernel_text(in);
}

StepKernel load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_kernel(buf.str());
}

} // namespace qm
