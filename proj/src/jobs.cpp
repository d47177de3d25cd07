#include "zq/jobs.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "zq/flatconn.hpp"
#include "zq/seifert.hpp"
#include "zq/series_io.hpp"
#include "zq/splice.hpp"
#include "zq/voa.hpp"
#include "zq/zhat.hpp"

namespace zq {

namespace {

using nlohmann::json;

PlumbingGraph load_graph(const JobSpec& job) {
    if (job.graph_text) return parse_graph_string(*job.graph_text);
    if (job.seifert_text) return to_plumbing(SeifertData::parse(*job.seifert_text)).graph;
    throw input_error("no input: provide a plumbing graph or Seifert data");
}

std::string elt_str(const FiniteAbelianGroup& h, const FiniteAbelianGroup::Elt& e) {
    return h.describe(e);
}

std::string vec_str(const std::vector<Int>& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        out << v[i].get_str();
    }
    out << ")";
    return out.str();
}

json graph_meta(const PlumbingGraph& g, const Rat& order) {
    json j;
    j["vertices"] = g.size();
    j["graph_hash"] = g.content_hash();
    j["order"] = {to_ll(order.get_num()), to_ll(order.get_den())};
    j["order_certified"] = true;
    return j;
}

json series_entry(const QSeries& s) {
    json j = series_to_json(s);
    j["pretty"] = s.pretty();
    return j;
}

JobResult zhat_job(const JobSpec& job, bool by_class) {
    PlumbingGraph g = load_graph(job);
    ZhatEvaluator ev(g);
    ev.set_threads(job.threads);
    const auto& h = ev.group();
    auto family = by_class ? ev.zhat_prime_all(job.order) : ev.zhat_all(job.order);
    auto elements = h.elements();

    json doc;
    doc["command"] = by_class ? "zhat-prime" : "zhat";
    doc["input"] = graph_meta(g, job.order);
    doc["h_order"] = to_ll(h.order());
    json list = json::array();
    std::ostringstream text;
    text << (by_class ? "Zhat'_h" : "Zhat_b") << " series, |H| = " << h.order().get_str()
         << ", order " << rat_str(job.order) << "\n";
    for (long long i = 0; i < static_cast<long long>(family.size()); ++i) {
        if (job.label && *job.label != i) continue;
        json entry;
        entry["label"] = i;
        if (by_class) {
            entry["class"] = elt_str(h, elements[static_cast<std::size_t>(i)]);
            text << "h = " << i << " " << elt_str(h, elements[static_cast<std::size_t>(i)]);
        } else {
            const SpincSet& sc = ev.spincs();
            entry["representative"] = vec_str(sc.representative(i));
            entry["c1"] = elt_str(h, sc.c1(i));
            entry["conjugate_label"] = sc.involution(i);
            entry["spin"] = sc.is_spin(i);
            text << "b[" << i << "] = " << vec_str(sc.representative(i)) << "  c1 "
                 << elt_str(h, sc.c1(i)) << "  conjugate " << sc.involution(i);
        }
        entry["series"] = series_entry(family[static_cast<std::size_t>(i)]);
        list.push_back(std::move(entry));
        text << "\n  " << family[static_cast<std::size_t>(i)].pretty() << "\n";
    }
    if (job.label && list.empty())
        throw precondition_error(by_class ? "unknown_class" : "unknown_spinc",
                                 "label index out of range");
    doc["series"] = std::move(list);
    return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
}

JobResult z0_job(const JobSpec& job, bool normalized) {
    PlumbingGraph g = load_graph(job);
    QSeries series;
    Rat lambda(0);
    Int habs;
    {
        ZhatEvaluator ev(g);
        ev.set_threads(job.threads);
        habs = abs(ev.matrix().det());
        if (normalized) {
            lambda = casson_walker(g);
            Rat internal = (job.order + 6 * lambda) / Rat(habs);
            series = ev.z0(internal).scale_exponents(Rat(habs)).shifted(-6 * lambda);
        } else {
            series = ev.z0(job.order);
        }
    }
    json doc;
    doc["command"] = normalized ? "z0-normalized" : "z0";
    doc["input"] = graph_meta(g, job.order);
    doc["h_order"] = to_ll(habs);
    std::ostringstream text;
    if (normalized) {
        doc["casson_walker"] = rat_str(lambda);
        text << "lambda = " << rat_str(lambda) << ", |H| = " << habs.get_str() << "\n";
        text << "q^(-6 lambda) Z0(q^|H|) = " << series.pretty() << "\n";
    } else {
        text << "Z0 = " << series.pretty() << "\n";
    }
    doc["series"] = series_entry(series);
    return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
}

JobResult splice_job(const JobSpec& job) {
    PlumbingGraph g = load_graph(job);
    SpliceDiagram diagram = splice_of(g);
    MaximalSpliceDiagram maximal = maximal_splice(g);
    AdjugateCheck check = verify_adjugate(g);

    json doc;
    doc["command"] = "splice";
    doc["input"] = graph_meta(g, job.order);
    json edges = json::array();
    for (const auto& e : maximal.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"at_u", e.at_u.get_str()}, {"at_v", e.at_v.get_str()}});
    doc["maximal_splice"] = std::move(edges);
    json dedges = json::array();
    for (const auto& e : diagram.edges) {
        json je;
        je["a"] = diagram.vertices[static_cast<std::size_t>(e.a)];
        je["b"] = diagram.vertices[static_cast<std::size_t>(e.b)];
        if (e.at_a) je["at_a"] = e.at_a->get_str();
        if (e.at_b) je["at_b"] = e.at_b->get_str();
        dedges.push_back(std::move(je));
    }
    doc["splice"] = std::move(dedges);
    doc["adjugate_identity"] = check.ok;
    std::ostringstream text;
    text << render_splice(diagram);
    text << "adjugate identity: " << (check.ok ? "ok" : "VIOLATED") << "\n";
    if (!check.ok) {
        text << "  first violation at (" << check.bad_a << "," << check.bad_b << "): expected "
             << check.expected.get_str() << ", got " << check.got.get_str() << "\n";
        doc["violation"] = {{"a", check.bad_a},
                            {"b", check.bad_b},
                            {"expected", check.expected.get_str()},
                            {"got", check.got.get_str()}};
    }
    return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
}

JobResult casson_job(const JobSpec& job) {
    PlumbingGraph g = load_graph(job);
    Rat lambda = casson_walker(g);
    json doc;
    doc["command"] = "casson-walker";
    doc["input"] = graph_meta(g, job.order);
    doc["casson_walker"] = rat_str(lambda);
    return {0, job.structured ? doc.dump(2) + "\n" : "lambda = " + rat_str(lambda) + "\n"};
}

JobResult seifert_job(const JobSpec& job) {
    if (!job.seifert_text) throw input_error("seifert-reduce needs Seifert data");
    SeifertData sd = SeifertData::parse(*job.seifert_text);
    SeifertPlumbing sp = to_plumbing(sd);
    Int habs = sd.h_order();
    Rat delta = reduction_delta(sd);
    QSeries fast = reduce_z0(sd, job.order);

    json doc;
    doc["command"] = "seifert-reduce";
    doc["seifert"] = sd.format();
    doc["plumbing"] = format_graph(sp.graph);
    doc["graph_hash"] = sp.graph.content_hash();
    doc["h_order"] = to_ll(habs);
    doc["euler_number"] = rat_str(sd.euler_number());
    doc["A"] = sd.big_a().get_str();
    doc["g0_order"] = g0_order(sd).get_str();
    doc["delta"] = rat_str(delta);
    doc["series"] = series_entry(fast);

    std::ostringstream text;
    text << "Seifert " << sd.format() << "\n";
    text << "plumbing graph:\n" << format_graph(sp.graph);
    text << "|H| = " << habs.get_str() << ", e = " << rat_str(sd.euler_number()) << ", A = "
         << sd.big_a().get_str() << ", g0 order = " << g0_order(sd).get_str() << "\n";
    text << "Z0(q^|H|) = " << fast.pretty() << "\n";

    if (job.label) {
        FiniteAbelianGroup h(matrix_of(sp.graph));
        auto all = reduce_zhat_prime_all(sd, job.order);
        if (*job.label < 0 || *job.label >= static_cast<long long>(all.size()))
            throw precondition_error("unknown_class", "H-element index out of range");
        doc["zhat_prime"] = series_entry(all[static_cast<std::size_t>(*job.label)]);
        text << "Zhat'_" << *job.label << "(q^|H|) = "
             << all[static_cast<std::size_t>(*job.label)].pretty() << "\n";
    }

    if (job.compare) {
        Rat unscaled = job.order / Rat(habs);
        QSeries slow = z0(sp.graph, unscaled).scale_exponents(Rat(habs));
        bool ok = agree(fast, slow);
        doc["compare"] = ok ? "PASS" : "FAIL";
        doc["lattice_series"] = series_entry(slow);
        text << "lattice path: " << slow.pretty() << "\n";
        text << "compare: " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) return {4, job.structured ? doc.dump(2) + "\n" : text.str()};
    }
    return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
}

JobResult connections_job(const JobSpec& job) {
    if (job.fibers.size() < 3) throw input_error("connections needs at least three multiplicities");
    ComponentCensus census = component_census(job.fibers);
    MonodromySpectrum spectrum = hamm_charpoly(job.fibers);
    bool identity = spectrum.mu == 4 * census.lambda_p;

    json doc;
    doc["command"] = "connections";
    doc["fibers"] = job.fibers;
    json rows = json::array();
    std::ostringstream text;
    text << "n  count  euler  contribution\n";
    for (const auto& row : census.rows) {
        rows.push_back({{"n", row.n},
                        {"count", row.count.get_str()},
                        {"euler_char", row.euler_char.get_str()},
                        {"contribution", row.contribution.get_str()}});
        text << row.n << "  " << row.count.get_str() << "  " << row.euler_char.get_str() << "  "
             << row.contribution.get_str() << "\n";
    }
    doc["census"] = std::move(rows);
    doc["lambda_p"] = census.lambda_p.get_str();
    doc["mu"] = spectrum.mu.get_str();
    doc["mu_is_4_lambda_p"] = identity;
    text << "lambda^P = " << census.lambda_p.get_str() << ", mu = " << spectrum.mu.get_str()
         << ", mu/4 = lambda^P: " << (identity ? "true" : "false") << "\n";
    if (!identity) return {4, job.structured ? doc.dump(2) + "\n" : text.str()};
    return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
}

JobResult identify_job(const JobSpec& job) {
    PlumbingGraph g = load_graph(job);
    ZhatEvaluator ev(g);
    ev.set_threads(job.threads);
    auto family = ev.zhat_all(job.order);
    auto match = identify_singlet(family, job.max_p);

    json doc;
    doc["command"] = "identify";
    doc["input"] = graph_meta(g, job.order);
    std::ostringstream text;
    if (!match) {
        doc["match"] = "no_match";
        text << "no_match\n";
        return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
    }
    if (match->pure_power) {
        doc["match"] = "pure-power";
        text << "pure q^Delta/(q)_inf family\n";
    } else {
        doc["match"] = "singlet";
        doc["p"] = *match->p;
        doc["central_charge"] = rat_str(match->central_charge);
        text << "(1," << *match->p << ") singlet model, c = " << rat_str(match->central_charge)
             << "\n";
    }
    json deltas = json::array();
    text << "Delta_b:";
    for (const auto& d : match->leading_exponents) {
        deltas.push_back(rat_str(d));
        text << " " << rat_str(d);
    }
    text << "\n";
    doc["leading_exponents"] = std::move(deltas);
    json recon = json::array();
    for (std::size_t i = 0; i < match->reconstruction.size(); ++i) {
        json pieces = json::array();
        text << "member " << i << ":";
        for (const auto& piece : match->reconstruction[i]) {
            pieces.push_back({{"a", piece.a}, {"shift", rat_str(piece.shift)}, {"coeff", rat_str(piece.coeff)}});
            if (piece.a == 0)
                text << "  " << rat_str(piece.coeff) << "*q^(" << rat_str(piece.shift) << ")";
            else
                text << "  " << rat_str(piece.coeff) << "*q^(" << rat_str(piece.shift)
                     << ")*Psi_(" << piece.a << ")";
        }
        text << "\n";
    }
    doc["reconstruction"] = std::move(recon);
    return {0, job.structured ? doc.dump(2) + "\n" : text.str()};
}

JobResult moves_job(const JobSpec& job) {
    PlumbingGraph g = load_graph(job);
    std::istringstream script(job.move_script);
    std::string line;
    int lineno = 0;
    while (std::getline(script, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (op == "blowup-edge") {
            long long u, v;
            int sign;
            if (!(ls >> u >> v >> sign))
                throw input_error("move script line " + std::to_string(lineno) +
                                  ": expected 'blowup-edge U V SIGN'");
            g = blow_up_edge(g, u, v, sign);
        } else if (op == "blowup-vertex") {
            long long v;
            int sign;
            if (!(ls >> v >> sign))
                throw input_error("move script line " + std::to_string(lineno) +
                                  ": expected 'blowup-vertex V SIGN'");
            g = blow_up_vertex(g, v, sign);
        } else if (op == "blowdown") {
            long long v;
            if (!(ls >> v))
                throw input_error("move script line " + std::to_string(lineno) +
                                  ": expected 'blowdown V'");
            g = blow_down(g, v);
        } else {
            throw input_error("move script line " + std::to_string(lineno) + ": unknown move '" +
                              op + "'");
        }
    }
    json doc;
    doc["command"] = "moves";
    doc["graph"] = format_graph(g);
    doc["graph_hash"] = g.content_hash();
    json labels = json::array();
    for (long long l : g.labels()) labels.push_back(l);
    doc["labels"] = std::move(labels);
    return {0, job.structured ? doc.dump(2) + "\n" : format_graph(g)};
}

void write_corpus_file(const std::filesystem::path& dir, const std::string& name,
                       const std::string& description, const json& payload) {
    json doc;
    doc["description"] = description;
    doc["payload"] = payload;
    std::ofstream out(dir / name);
    out << doc.dump(2) << "\n";
}

JobResult seed_corpus_job(const JobSpec& job) {
    if (job.corpus_dir.empty()) throw input_error("seed-corpus needs a target directory");
    std::filesystem::path dir(job.corpus_dir);
    std::filesystem::create_directories(dir);

    auto graph_payload = [](const PlumbingGraph& g, const std::vector<QSeries>& family,
                            const QSeries& z0s) {
        json p;
        p["graph"] = format_graph(g);
        p["graph_hash"] = g.content_hash();
        json fam = json::array();
        for (const auto& s : family) fam.push_back(series_to_json(s));
        p["zhat"] = std::move(fam);
        p["z0"] = series_to_json(z0s);
        return p;
    };

    {
        PlumbingGraph e6({-2, -2, -2, -2, -2, -2}, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}});
        ZhatEvaluator ev(e6);
        write_corpus_file(dir, "e6.json",
                          "six-vertex -2 star (Seifert 2; 2/1 3/2 3/2): spin-c series to order 111 "
                          "and their sum to order 26",
                          graph_payload(e6, ev.zhat_all(Rat(111)), ev.z0(Rat(26))));
    }
    {
        PlumbingGraph y1({-2, -3, -1, -17, -1, -3, -2, -2},
                         {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}});
        ZhatEvaluator ev(y1);
        write_corpus_file(dir, "two_node_y1.json",
                          "eight-vertex two-node homology sphere: z0 to order 25 and the "
                          "splice-normalized form to order 50",
                          {{"graph", format_graph(y1)},
                           {"z0", series_to_json(ev.z0(Rat(25)))},
                           {"normalized_z0", series_to_json(normalized_z0(y1, Rat(50)))}});
    }
    {
        PlumbingGraph y2({-2, -2, -3, -2, -2, -2, -2, -2, -2, -2},
                         {{0, 1}, {1, 2}, {2, 4}, {2, 3}, {4, 5}, {4, 6}, {6, 7}, {7, 8}, {8, 9}});
        write_corpus_file(dir, "ten_vertex_y2.json",
                          "ten-vertex companion with |H| = 17 and the same splice diagram",
                          {{"graph", format_graph(y2)},
                           {"normalized_z0", series_to_json(normalized_z0(y2, Rat(50)))}});
    }
    {
        SeifertData sd = SeifertData::parse("1; 3/1 4/1 5/1");
        write_corpus_file(dir, "s12_seifert.json",
                          "Seifert 1; 3/1 4/1 5/1 (|H| = 13, all labels nonzero): reduced z0",
                          {{"seifert", sd.format()},
                           {"z0_scaled", series_to_json(reduce_z0(sd, Rat(40 * 13)))}});
    }
    return {0, "corpus written to " + dir.string() + "\n"};
}

}  // namespace

JobResult run_job(const JobSpec& job) {
    try {
        switch (job.command) {
            case JobSpec::Command::Zhat: return zhat_job(job, false);
            case JobSpec::Command::ZhatPrime: return zhat_job(job, true);
            case JobSpec::Command::Z0: return z0_job(job, false);
            case JobSpec::Command::Z0Normalized: return z0_job(job, true);
            case JobSpec::Command::Splice: return splice_job(job);
            case JobSpec::Command::CassonWalker: return casson_job(job);
            case JobSpec::Command::SeifertReduce: return seifert_job(job);
            case JobSpec::Command::Connections: return connections_job(job);
            case JobSpec::Command::Identify: return identify_job(job);
            case JobSpec::Command::Moves: return moves_job(job);
            case JobSpec::Command::SeedCorpus: return seed_corpus_job(job);
        }
        return {4, "{\"error\":\"internal\",\"message\":\"unknown command\"}\n"};
    } catch (const Error& e) {
        json err{{"error", e.kind()}, {"message", e.what()}};
        return {e.exit_code(), err.dump() + "\n"};
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"message", e.what()}};
        return {4, err.dump() + "\n"};
    }
}

}  // namespace zq
