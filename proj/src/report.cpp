#include "thrsat/report.hpp"

namespace thrsat {

namespace {

Json literals_json(const std::vector<Literal>& ls) {
    Json a = Json::array();
    for (Literal l : ls) a.push_back(l.to_int());
    return a;
}

Json clause_json(const Clause& c) { return literals_json(c.lits); }

std::vector<Literal> literals_from(const Json& a) {
    std::vector<Literal> out;
    for (const auto& x : a) out.push_back(Literal::from_int(x.get<long long>()));
    return out;
}

CertificateKind kind_from(const std::string& s) {
    for (auto k : {CertificateKind::exact_count, CertificateKind::no_witness, CertificateKind::hitting_set,
                   CertificateKind::ledger})
        if (s == certificate_kind_name(k)) return k;
    throw Error(ErrorKind::parse, "unknown certificate kind " + s);
}

Json node_json(const TreeNode& n) {
    if (n.is_leaf)
        return Json{{"leaf", {{"units", literals_json(n.leaf.units)},
                              {"bottom", n.leaf.bottom},
                              {"fixed_vars", n.leaf.fixed_vars}}}};
    Json split = Json::array(), children = Json::array();
    for (const auto& c : n.split) split.push_back(clause_json(c));
    for (std::size_t i = 0; i < n.children.size(); ++i)
        children.push_back({{"assignment", literals_json(n.assignments[i])}, {"node", node_json(n.children[i])}});
    return Json{{"split", split}, {"children", children}};
}

}  // namespace

Json verdict_to_json(const Verdict& v, bool budget_exceeded) {
    Json j;
    j["answer"] = v.yes ? "YES" : "NO";
    j["branch_tag"] = v.branch_tag;
    Json c;
    c["kind"] = certificate_kind_name(v.certificate.kind);
    if (v.certificate.count) {
        c["count"] = v.certificate.count->value.get_str();
        if (v.certificate.count->term_bound) c["term_bound"] = *v.certificate.count->term_bound;
    }
    if (v.certificate.witness) {
        c["witness_kind"] = v.certificate.witness->kind;
        c["witness_clauses"] = v.certificate.witness->clause_indices;
        c["witness_bound"] = v.certificate.witness->bound.get_str();
    }
    if (!v.certificate.hitting_set.empty()) c["hitting_set"] = literals_json(v.certificate.hitting_set);
    j["certificate"] = c;
    Json p = Json::object();
    for (const auto& [k, val] : v.params_used) p[k] = val;
    j["params_used"] = p;
    j["budget"] = {{"leaves_expanded", v.leaves_expanded}, {"exceeded", budget_exceeded}};
    if (v.good_count) j["good_assignment_count"] = v.good_count->get_str();
    if (v.ledger) {
        Json l = Json::array();
        for (const auto& e : v.ledger->entries) l.push_back({{"core", literals_json(e.core)}, {"size", e.size}});
        j["ledger"] = l;
    }
    return j;
}

Verdict verdict_from_json(const Json& j) {
    Verdict v;
    const std::string ans = j.at("answer").get<std::string>();
    if (ans != "YES" && ans != "NO") throw Error(ErrorKind::parse, "answer must be YES or NO");
    v.yes = ans == "YES";
    v.branch_tag = j.at("branch_tag").get<std::string>();
    const Json& c = j.at("certificate");
    v.certificate.kind = kind_from(c.at("kind").get<std::string>());
    if (c.contains("count")) {
        ExactCount e;
        e.value = mpz_class(c["count"].get<std::string>());
        if (c.contains("term_bound")) e.term_bound = c["term_bound"].get<std::uint64_t>();
        v.certificate.count = e;
    }
    if (c.contains("witness_clauses")) {
        NoWitness w;
        w.kind = c.value("witness_kind", "");
        w.clause_indices = c["witness_clauses"].get<std::vector<std::size_t>>();
        w.bound = mpq_class(c.at("witness_bound").get<std::string>());
        w.bound.canonicalize();
        v.certificate.witness = w;
    }
    if (c.contains("hitting_set")) v.certificate.hitting_set = literals_from(c["hitting_set"]);
    for (const auto& [k, val] : j.at("params_used").items()) v.params_used.emplace_back(k, val.get<std::string>());
    v.leaves_expanded = j.at("budget").at("leaves_expanded").get<std::uint64_t>();
    if (j.contains("good_assignment_count")) v.good_count = mpz_class(j["good_assignment_count"].get<std::string>());
    if (j.contains("ledger")) {
        SunflowerLedger l;
        for (const auto& e : j["ledger"])
            l.entries.push_back({literals_from(e.at("core")), e.at("size").get<std::size_t>(), {}});
        v.ledger = l;
    }
    return v;
}

Json tree_to_json(const DecompositionTree& t) {
    return {{"leaf_count", t.leaf_count()}, {"depth", t.depth()}, {"root", node_json(t.root)}};
}

Json sunflower_to_json(const Sunflower& s) {
    return {{"core", literals_json(s.core)}, {"weight", s.weight()}, {"petal_indices", s.petal_indices}};
}

Json reduction_to_json(const ReductionRecord& r) {
    return {{"name", r.name},
            {"relation", r.relation},
            {"input_vars", r.input.num_vars},
            {"input_clauses", r.input.clauses.size()},
            {"output_vars", r.output.num_vars},
            {"output_clauses", r.output.clauses.size()}};
}

}  // namespace thrsat
