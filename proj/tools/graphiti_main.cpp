#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "graphiti/check.hpp"
#include "graphiti/cypher_interp.hpp"
#include "graphiti/cypher_parser.hpp"
#include "graphiti/json_io.hpp"
#include "graphiti/sql_interp.hpp"
#include "graphiti/sql_parser.hpp"
#include "graphiti/transpile.hpp"

namespace {

using namespace graphiti;

struct Paths {
    std::string graph_schema, rel_schema, cypher, sql, transform, instance, out;
    bool emit_ast = false;
    bool json = false;
    EnumBounds bounds;
    int threads = 0;
};

GraphSchema load_graph_schema(const std::string& path) {
    return graph_schema_from_json(Json::parse(read_file(path)));
}

RelSchema load_rel_schema(const std::string& path) {
    return rel_schema_from_json(Json::parse(read_file(path)));
}

void emit(const Paths& p, const std::string& payload) {
    if (!p.out.empty()) write_file(p.out, payload);
    else std::cout << payload << "\n";
}

int cmd_infer(const Paths& p) {
    GraphSchema gs = load_graph_schema(p.graph_schema);
    SdtResult sdt = infer_sdt(gs);
    if (p.json) {
        Json out = {{"inducedSchema", to_json(sdt.induced_schema)},
                    {"sdt", print_transformer(sdt.sdt)}};
        emit(p, out.dump(2));
    } else {
        emit(p, to_json(sdt.induced_schema).dump(2) + "\n" + print_transformer(sdt.sdt));
    }
    return 0;
}

int cmd_transpile(const Paths& p) {
    GraphSchema gs = load_graph_schema(p.graph_schema);
    cypher::QueryPtr q = cypher::parse_cypher(read_file(p.cypher));
    SdtResult sdt = infer_sdt(gs);
    sql::QueryPtr out = transpile_query(sdt, gs, *q);
    if (p.emit_ast) {
        Json j = {{"cypher", cypher::to_json(*q)}, {"sql", sql::to_json(*out)}};
        emit(p, j.dump(2));
        return 0;
    }
    if (p.json) {
        Json j = {{"sql", sql::print_sql(*out)}, {"inducedSchema", to_json(sdt.induced_schema)}};
        emit(p, j.dump(2));
        return 0;
    }
    emit(p, sql::print_sql(*out));
    return 0;
}

int cmd_apply(const Paths& p) {
    GraphSchema gs = load_graph_schema(p.graph_schema);
    GraphInstance g = graph_instance_from_json(Json::parse(read_file(p.instance)));
    RelInstance d;
    if (!p.transform.empty()) {
        Transformer phi = parse_transformer(read_file(p.transform));
        RelSchema rs = load_rel_schema(p.rel_schema);
        check_transformer_shape(phi, gs, rs);
        d = apply_transformer(phi, ground_graph(gs, g), rs);
    } else {
        d = apply_sdt(gs, g);
    }
    emit(p, to_json(d).dump(2));
    return 0;
}

int cmd_eval_cypher(const Paths& p) {
    GraphSchema gs = load_graph_schema(p.graph_schema);
    cypher::QueryPtr q = cypher::parse_cypher(read_file(p.cypher));
    if (p.emit_ast) {
        emit(p, cypher::to_json(*q).dump(2));
        return 0;
    }
    GraphInstance g = graph_instance_from_json(Json::parse(read_file(p.instance)));
    emit(p, to_json(cypher::eval_cypher(gs, g, *q)).dump(2));
    return 0;
}

int cmd_eval_sql(const Paths& p) {
    RelSchema rs = load_rel_schema(p.rel_schema);
    sql::QueryPtr q = sql::parse_sql(read_file(p.sql));
    if (p.emit_ast) {
        emit(p, sql::to_json(*q).dump(2));
        return 0;
    }
    RelInstance d = rel_instance_from_json(Json::parse(read_file(p.instance)));
    emit(p, to_json(sql::eval_sql(rs, d, *q)).dump(2));
    return 0;
}

int cmd_check(const Paths& p) {
    GraphSchema gs = load_graph_schema(p.graph_schema);
    RelSchema rs = load_rel_schema(p.rel_schema);
    cypher::QueryPtr q_g = cypher::parse_cypher(read_file(p.cypher));
    sql::QueryPtr q_r = sql::parse_sql(read_file(p.sql));
    Transformer phi = parse_transformer(read_file(p.transform));

    CheckVerdict v = check_equivalence(gs, *q_g, rs, *q_r, phi, p.bounds, p.threads);
    Json out = {{"instancesEnumerated", v.instances_enumerated},
                {"instancesChecked", v.instances_checked},
                {"bounds",
                 {{"maxNodesPerType", p.bounds.max_nodes_per_type},
                  {"maxEdgesPerType", p.bounds.max_edges_per_type},
                  {"valueDomainSize", p.bounds.value_domain},
                  {"timeLimitSeconds", p.bounds.time_limit_seconds}}}};
    switch (v.kind) {
        case VerdictKind::EquivalentUpToBound: out["verdict"] = "EquivalentUpToBound"; break;
        case VerdictKind::NotEquivalent: out["verdict"] = "NotEquivalent"; break;
        case VerdictKind::Unknown:
            out["verdict"] = "Unknown";
            out["reason"] = v.unknown_reason;
            break;
    }
    if (v.counterexample) {
        out["counterexample"] = {{"graphInstance", to_json(v.counterexample->graph)},
                                 {"relInstance", to_json(v.counterexample->rel)},
                                 {"cypherResult", to_json(v.counterexample->cypher_result)},
                                 {"sqlResult", to_json(v.counterexample->sql_result)}};
    }
    emit(p, out.dump(2));
    switch (v.kind) {
        case VerdictKind::EquivalentUpToBound: return 0;
        case VerdictKind::NotEquivalent: return 1;
        case VerdictKind::Unknown: return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphiti: featherweight Cypher-to-SQL transpilation and bounded "
                 "equivalence checking"};
    app.require_subcommand(1);

    Paths p;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph-schema", p.graph_schema, "graph schema JSON file");
        cmd->add_option("--rel-schema", p.rel_schema, "relational schema JSON file");
        cmd->add_option("--cypher", p.cypher, "Cypher query file");
        cmd->add_option("--sql", p.sql, "SQL query file");
        cmd->add_option("--transform", p.transform, "database transformer .dtl file");
        cmd->add_option("--instance", p.instance, "instance JSON file");
        cmd->add_option("--max-nodes", p.bounds.max_nodes_per_type, "max nodes per type");
        cmd->add_option("--max-edges", p.bounds.max_edges_per_type, "max edges per type");
        cmd->add_option("--max-values", p.bounds.value_domain, "value domain size");
        cmd->add_option("--timeout", p.bounds.time_limit_seconds, "time limit in seconds");
        cmd->add_option("--threads", p.threads, "worker threads for check (0 = auto)");
        cmd->add_flag("--emit-ast", p.emit_ast, "dump the parsed AST as JSON");
        cmd->add_flag("--json", p.json, "structured JSON output");
        cmd->add_option("--out", p.out, "write output to a file instead of stdout");
    };

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Paths&);
    };
    static const Sub subs[] = {
        {"infer", "induced relational schema and standard transformer", cmd_infer},
        {"transpile", "Cypher to SQL over the induced schema", cmd_transpile},
        {"apply", "apply a transformer (default: the SDT) to a graph instance", cmd_apply},
        {"eval-cypher", "evaluate a Cypher query on a graph instance", cmd_eval_cypher},
        {"eval-sql", "evaluate a SQL query on a relational instance", cmd_eval_sql},
        {"check", "bounded equivalence check modulo a transformer", cmd_check},
    };
    for (const Sub& s : subs) add_common(app.add_subcommand(s.name, s.help));

    CLI11_PARSE(app, argc, argv);

    try {
        for (const Sub& s : subs)
            if (app.got_subcommand(s.name)) return s.run(p);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const BindError& e) {
        std::cerr << "binding error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}
