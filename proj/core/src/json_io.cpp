#include "kzhol/json_io.hpp"

#include <fstream>

#include "kzhol/error.hpp"

namespace kzhol {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw IoError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json series_to_json(const Series& g) {
    Json terms = Json::array();
    const auto& gens = *g.catalogue();
    g.for_each_term([&](const Word& w, Complex c) {
        Json word = Json::array();
        for (GeneratorId x : w) word.push_back(gens.label(x));
        terms.push_back({{"word", word}, {"re", c.real()}, {"im", c.imag()}});
    });
    return {{"degree", g.degree()}, {"generators", gens.labels()}, {"terms", terms}};
}

Series series_from_json(const Json& j, CataloguePtr gens) {
    try {
        const int degree = j.at("degree").get<int>();
        if (degree < 0) throw IoError("series degree must be non-negative");
        if (!gens) gens = make_catalogue(j.at("generators").get<std::vector<std::string>>());
        Series out(gens, degree);
        Word w;
        for (const auto& term : j.at("terms")) {
            w.clear();
            for (const auto& label : term.at("word")) {
                auto id = gens->find(label.get<std::string>());
                if (!id) throw IoError("unknown generator '" + label.get<std::string>() + "' in series");
                w.push_back(*id);
            }
            if (static_cast<int>(w.size()) > degree) throw IoError("series term exceeds the stated degree");
            out.add_coeff(w, {term.at("re").get<double>(), term.at("im").get<double>()});
        }
        return out;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed series JSON: ") + e.what());
    }
}

namespace {

Json tangential_to_json(const TangentialPoint& tp) { return {{"index", tp.puncture}, {"v", complex_to_json(tp.v)}}; }

TangentialPoint tangential_from_json(const Json& j) {
    return {j.at("index").get<int>(), complex_from_json(j.at("v"))};
}

}  // namespace

Json path_to_json(const PathSpec& path) {
    Json pz = Json::array(), wp = Json::array();
    for (Complex z : path.punctures) pz.push_back(complex_to_json(z));
    for (Complex z : path.waypoints) wp.push_back(complex_to_json(z));
    return {{"punctures", pz},
            {"start", tangential_to_json(path.start)},
            {"end", tangential_to_json(path.end)},
            {"waypoints", wp}};
}

PathSpec path_from_json(const Json& j) {
    try {
        PathSpec p;
        for (const auto& z : j.at("punctures")) p.punctures.push_back(complex_from_json(z));
        p.start = tangential_from_json(j.at("start"));
        p.end = tangential_from_json(j.at("end"));
        if (j.contains("waypoints"))
            for (const auto& z : j.at("waypoints")) p.waypoints.push_back(complex_from_json(z));
        return p;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed path JSON: ") + e.what());
    }
}

Json analyzed_path_to_json(const AnalyzedPath& path, int samples) {
    Json crossings = Json::array();
    for (const auto& c : path.crossings)
        crossings.push_back({{"t", c.t},
                             {"s", c.s},
                             {"position", complex_to_json(c.position)},
                             {"sign", c.sign},
                             {"u", complex_to_json(c.u)},
                             {"theta", c.theta},
                             {"line_slope", (c.s - 1.0) / c.t}});
    Json out = {{"path", path_to_json(path.spec)},
                {"length", path.length},
                {"breakpoints", path.breakpoints},
                {"crossings", crossings},
                {"rot", path.rot},
                {"vratio", path.vratio}};
    if (samples > 0) {
        Json pts = Json::array();
        for (Complex z : sample(path, samples)) pts.push_back(complex_to_json(z));
        out["samples"] = pts;
    }
    return out;
}

Json engine_config_to_json(const EngineConfig& cfg) {
    return {{"degree", cfg.degree},
            {"expansion_order", cfg.expansion_order},
            {"max_expansion_order", cfg.max_expansion_order},
            {"expansion_tolerance", cfg.expansion_tolerance},
            {"quad_order", cfg.quad_order},
            {"eval_fraction", cfg.eval_fraction},
            {"bernstein_min", cfg.bernstein_min},
            {"max_panel", cfg.max_panel}};
}

Json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw IoError("cannot parse " + file.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& file, const Json& j) {
    std::error_code ec;
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) throw IoError("cannot create directory for " + file.string() + ": " + ec.message());
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + file.string());
}

}  // namespace kzhol
