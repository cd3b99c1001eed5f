#include "wl/json_io.hpp"

#include "wl/types.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wl {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw invalid_input("malformed JSON");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write file: " + path);
    out << text << '\n';
}

TailModel tail_from(const json& j) {
    TailModel T;
    if (j.contains("a")) T.a = j.at("a").get<double>();
    if (j.contains("b")) T.b = j.at("b").get<double>();
    return T;
}

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::atom_phi: return "atom_phi";
        case NodeKind::atom_common: return "atom_common";
        case NodeKind::ac_one_sided: return "ac_one_sided";
        case NodeKind::ac_two_sided: return "ac_two_sided";
    }
    throw invalid_input("unknown node kind");
}

NodeKind kind_from(const std::string& s) {
    if (s == "atom_phi") return NodeKind::atom_phi;
    if (s == "atom_common") return NodeKind::atom_common;
    if (s == "ac_one_sided") return NodeKind::ac_one_sided;
    if (s == "ac_two_sided") return NodeKind::ac_two_sided;
    throw invalid_input("unknown node kind: " + s);
}

} // namespace

LatticeSpec lattice_from_json_text(const std::string& text) {
    const json j = parse_or_throw(text);
    LatticeSpec J;
    try {
        J.window_lo = j.at("window_lo").get<int>();
        J.window_hi = j.at("window_hi").get<int>();
        J.a_window = j.at("a").get<std::vector<double>>();
        J.b_window = j.at("b").get<std::vector<double>>();
        if (j.contains("left_tail")) J.left_tail = tail_from(j.at("left_tail"));
        if (j.contains("right_tail")) J.right_tail = tail_from(j.at("right_tail"));
    } catch (const json::exception& e) {
        throw invalid_input(std::string("bad lattice JSON: ") + e.what());
    }
    J.validate();
    return J;
}

LatticeSpec lattice_from_json_file(const std::string& path) {
    return lattice_from_json_text(read_file(path));
}

std::string lattice_to_json_text(const LatticeSpec& J) {
    json j;
    j["window_lo"] = J.window_lo;
    j["window_hi"] = J.window_hi;
    j["a"] = J.a_window;
    j["b"] = J.b_window;
    j["left_tail"] = {{"a", J.left_tail.a}, {"b", J.left_tail.b}};
    j["right_tail"] = {{"a", J.right_tail.a}, {"b", J.right_tail.b}};
    return j.dump(2);
}

void save_lattice_json(const LatticeSpec& J, const std::string& path) {
    write_file(path, lattice_to_json_text(J));
}

std::string spectral_data_to_json_text(const SpectralData& D) {
    json j;
    j["schema"] = 1;
    j["kind"] = "spectral_data";
    j["b_minus1"] = D.b_minus1;
    j["sigma"] = D.sigma;
    j["C2"] = D.C2;
    j["jump_sign"] = D.jump_sign;
    j["max_rhat"] = D.max_rhat;
    j["min_circle_q"] = D.min_circle_q;
    j["mirror_identity_residual"] = D.mirror_identity_residual;
    json circle = json::array();
    for (const auto& c : D.circle)
        circle.push_back({{"theta", c.theta},
                          {"rhat_re", c.rhat.real()},
                          {"rhat_im", c.rhat.imag()},
                          {"q", c.q}});
    j["circle"] = std::move(circle);
    json support = json::array();
    for (const auto& s : D.support)
        support.push_back({{"kind", kind_name(s.kind)},
                           {"beta", s.beta},
                           {"weight", s.weight},
                           {"glw", s.glw},
                           {"p", s.p},
                           {"q", s.q},
                           {"m", s.m},
                           {"coupling", s.coupling},
                           {"mirror", s.mirror},
                           {"panel", s.panel}});
    j["support"] = std::move(support);
    json panels = json::array();
    for (const auto& p : D.panels)
        panels.push_back({{"first", p.first},
                          {"count", p.count},
                          {"lo", p.lo},
                          {"hi", p.hi},
                          {"two_sided", p.two_sided}});
    j["panels"] = std::move(panels);
    return j.dump(2);
}

void save_spectral_data_json(const SpectralData& D, const std::string& path) {
    write_file(path, spectral_data_to_json_text(D));
}

SpectralData spectral_data_from_json_text(const std::string& text) {
    const json j = parse_or_throw(text);
    SpectralData D;
    try {
        if (j.at("schema").get<int>() != 1) throw invalid_input("unsupported schema");
        if (j.value("kind", std::string("spectral_data")) != "spectral_data")
            throw invalid_input("not a spectral data artifact");
        D.b_minus1 = j.at("b_minus1").get<double>();
        D.sigma = j.at("sigma").get<int>();
        D.C2 = j.at("C2").get<double>();
        D.jump_sign = j.at("jump_sign").get<int>();
        D.max_rhat = j.value("max_rhat", 0.0);
        D.min_circle_q = j.value("min_circle_q", 0.0);
        D.mirror_identity_residual = j.value("mirror_identity_residual", 0.0);
        for (const auto& c : j.at("circle")) {
            CircleNode n;
            n.theta = c.at("theta").get<double>();
            n.rhat = cplx(c.at("rhat_re").get<double>(), c.at("rhat_im").get<double>());
            n.q = c.at("q").get<double>();
            D.circle.push_back(n);
        }
        for (const auto& s : j.at("support")) {
            SupportNode n;
            n.kind = kind_from(s.at("kind").get<std::string>());
            n.beta = s.at("beta").get<double>();
            n.weight = s.at("weight").get<double>();
            n.glw = s.value("glw", 0.0);
            n.p = s.value("p", 0.0);
            n.q = s.value("q", 0.0);
            n.m = s.value("m", 0.0);
            n.coupling = s.value("coupling", 0.0);
            n.mirror = s.value("mirror", -1);
            n.panel = s.value("panel", -1);
            D.support.push_back(n);
        }
        for (const auto& p : j.at("panels")) {
            SupportPanel q;
            q.first = p.at("first").get<int>();
            q.count = p.at("count").get<int>();
            q.lo = p.at("lo").get<double>();
            q.hi = p.at("hi").get<double>();
            q.two_sided = p.at("two_sided").get<bool>();
            D.panels.push_back(q);
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("bad spectral data JSON: ") + e.what());
    }
    const int N = D.circle_size();
    if (N < 8 || (N & (N - 1)) != 0)
        throw invalid_input("circle grid size must be a power of two, at least 8");
    if (std::abs(D.sigma) != 1 || std::abs(D.jump_sign) != 1 || !(D.b_minus1 > 0.0))
        throw invalid_input("inconsistent spectral data scalars");
    return D;
}

SpectralData spectral_data_from_json_file(const std::string& path) {
    return spectral_data_from_json_text(read_file(path));
}

} // namespace wl
