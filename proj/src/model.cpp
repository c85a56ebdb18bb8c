#include "relviews/model.hpp"

#include <fstream>
#include <sstream>

namespace relviews {

using nlohmann::json;

namespace {

using Env = std::map<std::string, Value>;

[[noreturn]] void schema(const std::string& where, const std::string& msg) {
    throw Error(ErrorKind::SchemaError, where + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) schema(where, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string text(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    schema(where, "expected a string");
}

Value integer(const json& j, const std::string& where, const std::map<std::string, Value>& constants = {}) {
    if (j.is_number_integer()) return static_cast<Value>(j.get<long>());
    if (j.is_string()) {
        auto it = constants.find(j.get<std::string>());
        if (it != constants.end()) return it->second;
    }
    schema(where, "expected an integer");
}

std::vector<Value> value_list(const json& j, const std::string& where, const std::map<std::string, Value>& constants) {
    std::vector<Value> out;
    if (j.is_object()) {
        const Value lo = integer(field(j, "from", where), where + ".from", constants);
        const Value hi = integer(field(j, "to", where), where + ".to", constants);
        for (Value v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    if (!j.is_array()) schema(where, "expected a list of values or {from, to}");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]", constants));
    return out;
}

ParseScope with_env(ParseScope s, const Env& env) {
    for (const auto& [k, v] : env) s.constants[k] = v;
    return s;
}

const std::vector<std::string>& table_of(const Model& m, bool abstract_side) {
    return abstract_side ? m.domains.abstract_locations : m.domains.concrete_locations;
}

LocRef location(const json& j, const Model& m, bool abs, const Env& env, const std::string& where) {
    const ParseScope scope = with_env(m.scope(abs), env);
    LocRef l = parse_loc(text(j, where), scope);
    if (!scope.locations.count(l.base)) schema(where, "undeclared location " + l.base);
    return l;
}

Expr expression(const json& j, const Model& m, bool abs, const Env& env, const std::string& where) {
    try {
        return parse_expr(text(j, where), with_env(m.scope(abs), env));
    } catch (const Error& e) {
        schema(where, e.what());
    }
}

std::optional<PrimCommand> parse_prim(const json& j, const Model& m, bool abs, const Env& env, const std::string& where);
CommandPtr command_env(const json& j, const Model& m, bool abs, const Env& env, const std::string& where);

std::optional<PrimCommand> parse_prim(const json& j, const Model& m, bool abs, const Env& env, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "id") return cmd::id();
    if (!j.is_object()) return std::nullopt;
    if (j.contains("assign")) {
        return cmd::store(location(j.at("assign"), m, abs, env, where + ".assign"),
                          expression(field(j, "value", where), m, abs, env, where + ".value"));
    }
    if (j.contains("assume")) return cmd::assume(expression(j.at("assume"), m, abs, env, where + ".assume"));
    if (j.contains("load")) {
        return cmd::load(location(j.at("load"), m, abs, env, where + ".load"),
                         location(field(j, "from", where), m, abs, env, where + ".from"));
    }
    if (j.contains("atomic")) return cmd::atomic(command_env(j.at("atomic"), m, abs, env, where + ".atomic"));
    if (j.contains("prim")) {
        PrimCommand p;
        p.name = text(j.at("prim"), where + ".prim");
        if (j.contains("locs")) {
            for (std::size_t i = 0; i < j.at("locs").size(); ++i) {
                p.locs.push_back(location(j.at("locs")[i], m, abs, env, where + ".locs[" + std::to_string(i) + "]"));
            }
        }
        if (j.contains("args")) {
            for (std::size_t i = 0; i < j.at("args").size(); ++i) {
                p.args.push_back(expression(j.at("args")[i], m, abs, env, where + ".args[" + std::to_string(i) + "]"));
            }
        }
        try {
            TransformerTable::builtin().validate(p);
        } catch (const Error& e) {
            schema(where, e.what());
        }
        return p;
    }
    return std::nullopt;
}

CommandPtr maybe(const json& j, const char* key, const Model& m, bool abs, const Env& env, const std::string& where) {
    if (!j.contains(key)) return cmd::skip();
    return command_env(j.at(key), m, abs, env, where + "." + key);
}

std::pair<Value, Value> for_range(const json& j, const Model& m, const std::string& where) {
    return {integer(field(j, "from", where), where + ".from", m.domains.constants),
            integer(field(j, "to", where), where + ".to", m.domains.constants)};
}

CommandPtr command_env(const json& j, const Model& m, bool abs, const Env& env, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "skip") return cmd::skip();
    if (auto p = parse_prim(j, m, abs, env, where)) return cmd::prim(*p);
    if (!j.is_object()) schema(where, "expected a command");
    if (j.contains("seq")) {
        std::vector<CommandPtr> parts;
        const auto& a = j.at("seq");
        if (!a.is_array()) schema(where, "seq expects a list");
        for (std::size_t i = 0; i < a.size(); ++i) {
            parts.push_back(command_env(a[i], m, abs, env, where + ".seq[" + std::to_string(i) + "]"));
        }
        return cmd::seq(parts);
    }
    if (j.contains("choice")) {
        const auto& a = j.at("choice");
        if (!a.is_array() || a.empty()) schema(where, "choice expects a non-empty list");
        CommandPtr out = command_env(a.back(), m, abs, env, where + ".choice[" + std::to_string(a.size() - 1) + "]");
        for (std::size_t i = a.size() - 1; i-- > 0;) {
            out = cmd::choice(command_env(a[i], m, abs, env, where + ".choice[" + std::to_string(i) + "]"), out);
        }
        return out;
    }
    if (j.contains("iter")) return cmd::iter(command_env(j.at("iter"), m, abs, env, where + ".iter"));
    if (j.contains("if")) {
        return cmd::if_then_else(expression(j.at("if"), m, abs, env, where + ".if"), maybe(j, "then", m, abs, env, where),
                                 maybe(j, "else", m, abs, env, where));
    }
    if (j.contains("while")) {
        return cmd::while_do(expression(j.at("while"), m, abs, env, where + ".while"), maybe(j, "do", m, abs, env, where));
    }
    if (j.contains("cas")) {
        return cmd::cas(location(j.at("cas"), m, abs, env, where + ".cas"),
                        expression(field(j, "old", where), m, abs, env, where + ".old"),
                        expression(field(j, "new", where), m, abs, env, where + ".new"), maybe(j, "then", m, abs, env, where),
                        maybe(j, "else", m, abs, env, where));
    }
    if (j.contains("for")) {
        const std::string var = text(j.at("for"), where + ".for");
        const auto [lo, hi] = for_range(j, m, where);
        std::vector<CommandPtr> parts;
        for (Value v = lo; v <= hi; ++v) {
            Env inner = env;
            inner[var] = v;
            parts.push_back(command_env(field(j, "do", where), m, abs, inner, where + ".do"));
        }
        return cmd::seq(parts);
    }
    schema(where, "unknown command form");
}

Spatial spatial_text(const std::string& s, const Model& m, const Env& env, const std::string& where) {
    try {
        Spatial p = expand(parse_spatial(s, with_env(m.scope(), env)), m.macros, m.domains.threads);
        bind_spatial(p, m.domains);
        return p;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError || e.kind() == ErrorKind::ModelError) schema(where, e.what());
        throw;
    }
}

Assertion assertion_env(const json& j, const Model& m, const Env& env, const std::string& where) {
    if (j.is_string()) return as::leaf(spatial_text(j.get<std::string>(), m, env, where));
    if (!j.is_object()) schema(where, "expected an assertion");
    if (j.contains("star") || j.contains("or")) {
        const bool star = j.contains("star");
        const auto& a = j.at(star ? "star" : "or");
        if (!a.is_array() || a.empty()) schema(where, "expected a non-empty list");
        Assertion out = assertion_env(a[0], m, env, where + "[0]");
        for (std::size_t i = 1; i < a.size(); ++i) {
            Assertion k = assertion_env(a[i], m, env, where + "[" + std::to_string(i) + "]");
            out = star ? as::star(out, k) : as::disj(out, k);
        }
        return out;
    }
    if (j.contains("exists")) {
        std::vector<std::string> vars;
        if (j.at("exists").is_array()) {
            for (const auto& v : j.at("exists")) vars.push_back(text(v, where + ".exists"));
        } else {
            vars.push_back(text(j.at("exists"), where + ".exists"));
        }
        Assertion body = assertion_env(field(j, "body", where), m, env, where + ".body");
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = as::exists(*it, body);
        return body;
    }
    schema(where, "unknown assertion form");
}

std::vector<RgAction> actions(const json& j, const Model& m, const std::string& where) {
    std::vector<RgAction> out;
    if (!j.is_array()) schema(where, "expected a list of actions");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        RgAction a;
        a.name = j[i].contains("name") ? text(j[i].at("name"), w) : std::to_string(i + 1);
        a.pre = spatial_text(text(field(j[i], "pre", w), w + ".pre"), m, {}, w + ".pre");
        a.post = spatial_text(text(field(j[i], "post", w), w + ".post"), m, {}, w + ".post");
        if (contains_box(a.pre) || contains_box(a.post)) schema(w, "action assertions describe shared fragments and take no box");
        out.push_back(std::move(a));
    }
    return out;
}

Heap initial_heap(const json& j, const Model& m, bool abs, const std::string& where) {
    Heap h;
    if (j.is_null()) return h;
    if (!j.is_object()) schema(where, "expected an object of location: value");
    const auto& table = table_of(m, abs);
    for (const auto& [k, v] : j.items()) {
        auto it = std::find(table.begin(), table.end(), k);
        if (it == table.end()) schema(where, "undeclared location " + k);
        h.set(static_cast<std::size_t>(it - table.begin()), integer(v, where + "." + k, m.domains.constants));
    }
    return h;
}

Domains parse_domains(const json& j, const std::string& where) {
    Domains d;
    if (j.contains("constants")) {
        for (const auto& [k, v] : j.at("constants").items()) d.constants[k] = integer(v, where + ".constants." + k);
    }
    for (const auto& l : field(j, "locations", where)) d.concrete_locations.push_back(text(l, where + ".locations"));
    if (j.contains("abstract_locations")) {
        for (const auto& l : j.at("abstract_locations")) d.abstract_locations.push_back(text(l, where + ".abstract_locations"));
    } else {
        d.abstract_locations = d.concrete_locations;
    }
    d.values = value_list(field(j, "values", where), where + ".values", d.constants);
    d.modulus = j.contains("modulus") ? integer(j.at("modulus"), where + ".modulus") : 0;
    d.threads = integer(field(j, "threads", where), where + ".threads");
    const auto& ms = field(j, "methods", where);
    if (!ms.is_array()) schema(where + ".methods", "expected a list");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string w = where + ".methods[" + std::to_string(i) + "]";
        MethodDecl md;
        md.name = text(field(ms[i], "name", w), w + ".name");
        md.args = value_list(field(ms[i], "args", w), w + ".args", d.constants);
        md.rets = value_list(field(ms[i], "rets", w), w + ".rets", d.constants);
        d.methods.push_back(std::move(md));
    }
    if (j.contains("cap")) d.cap = static_cast<std::size_t>(integer(j.at("cap"), where + ".cap"));
    if (d.modulus <= 0) {
        Value hi = 0;
        for (Value v : d.values) hi = std::max(hi, v);
        d.modulus = hi + 1;
    }
    return d;
}

void set_keys(const json& j, std::set<std::string>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) out.insert(k);
    }
}

} // namespace

ParseScope Model::scope(bool abstract_side) const {
    ParseScope s;
    s.locations = location_bases(abstract_side ? domains.abstract_locations : domains.concrete_locations);
    s.constants = domains.constants;
    for (const auto& [k, v] : macros) s.macros.insert(k);
    for (const auto& md : domains.methods) s.methods.insert(md.name);
    return s;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string body = ss.str();
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < body.size(); ++i) {
            if (body[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::SchemaError,
                    path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": syntax error");
    }
}

Model load_model(const json& doc, std::size_t cap_override) {
    if (!doc.is_object()) schema("model", "expected an object");
    Model m;
    m.source = doc;
    m.name = doc.contains("name") ? text(doc.at("name"), "name") : "model";
    m.domains = parse_domains(field(doc, "domains", "model"), "domains");
    if (cap_override) m.domains.cap = cap_override;
    try {
        m.domains.validate();
    } catch (const Error& e) {
        schema("domains", e.what());
    }
    m.monoid = doc.contains("monoid") ? text(doc.at("monoid"), "monoid") : "dcsl";
    if (m.monoid != "dcsl" && m.monoid != "rgsep") schema("monoid", "expected \"dcsl\" or \"rgsep\"");
    if (doc.contains("history_bound")) {
        const std::string k = text(doc.at("history_bound"), "history_bound");
        if (k == "events") {
            m.bound_kind = BoundKind::Events;
        } else if (k == "steps") {
            m.bound_kind = BoundKind::Steps;
        } else {
            schema("history_bound", "expected \"events\" or \"steps\"");
        }
    }
    if (doc.contains("macros")) {
        for (const auto& [k, v] : doc.at("macros").items()) m.macros[k] = MacroDef{};
        for (const auto& [k, v] : doc.at("macros").items()) {
            const std::string w = "macros." + k;
            MacroDef def;
            if (v.contains("params")) {
                for (const auto& p : v.at("params")) def.params.push_back(text(p, w + ".params"));
            }
            try {
                def.body = parse_spatial(text(field(v, "body", w), w + ".body"), m.scope());
            } catch (const Error& e) {
                schema(w, e.what());
            }
            m.macros[k] = std::move(def);
        }
    }
    std::set<std::string> conc, abs, declared;
    set_keys(field(doc, "methods", "model"), conc);
    set_keys(field(doc, "abstract", "model"), abs);
    for (const auto& md : m.domains.methods) declared.insert(md.name);
    if (conc != abs) throw Error(ErrorKind::ModelError, "dom mismatch: concrete and abstract methods differ");
    if (conc != declared) throw Error(ErrorKind::ModelError, "dom mismatch: methods differ from the declared domains");
    for (const auto& [k, v] : doc.at("methods").items()) {
        m.methods[k] = bind_command(command_env(v, m, false, {}, "methods." + k), m.domains.concrete_locations,
                                    m.domains.values);
    }
    for (const auto& [k, v] : doc.at("abstract").items()) {
        m.abstract[k] = bind_command(command_env(v, m, true, {}, "abstract." + k), m.domains.abstract_locations,
                                     m.domains.values);
    }
    if (doc.contains("initial")) {
        const auto& init = doc.at("initial");
        if (init.contains("concrete")) m.initial_concrete = initial_heap(init.at("concrete"), m, false, "initial.concrete");
        if (init.contains("abstract")) m.initial_abstract = initial_heap(init.at("abstract"), m, true, "initial.abstract");
    }
    if (doc.contains("shared")) m.shared = spatial_text(text(doc.at("shared"), "shared"), m, {}, "shared");
    if (doc.contains("guarantee")) m.guarantee = actions(doc.at("guarantee"), m, "guarantee");
    if (doc.contains("environment")) m.environment = actions(doc.at("environment"), m, "environment");
    if (doc.contains("spec")) {
        for (const auto& [k, v] : doc.at("spec").items()) {
            if (!m.methods.count(k)) throw Error(ErrorKind::ModelError, "spec for unknown method " + k);
            m.spec[k] = MethodSpec{assertion_env(field(v, "pre", "spec." + k), m, {}, "spec." + k + ".pre"),
                                   assertion_env(field(v, "post", "spec." + k), m, {}, "spec." + k + ".post")};
        }
    }
    if (m.monoid == "rgsep" && !m.spec.empty() && !m.shared) {
        throw Error(ErrorKind::ModelError, "an RGSep model with specifications needs a shared universe");
    }
    return m;
}

Model load_model_file(const std::string& path, std::size_t cap_override) {
    return load_model(read_json_file(path), cap_override);
}

json serialize_model(const Model& m) { return m.source; }

std::string model_fingerprint(const Model& m) {
    std::ostringstream os;
    const Domains& d = m.domains;
    os << "name " << m.name << "\nmonoid " << m.monoid << "\nthreads " << d.threads << " modulus " << d.modulus << "\n";
    os << "locations";
    for (const auto& l : d.concrete_locations) os << ' ' << l;
    os << "\nabstract_locations";
    for (const auto& l : d.abstract_locations) os << ' ' << l;
    os << "\nvalues";
    for (Value v : d.values) os << ' ' << v;
    os << "\n";
    for (const auto& md : d.methods) {
        os << "method " << md.name << " args";
        for (Value v : md.args) os << ' ' << v;
        os << " rets";
        for (Value v : md.rets) os << ' ' << v;
        os << "\n";
    }
    for (const auto& [k, c] : m.methods) os << "concrete " << k << " " << c->str() << "\n";
    for (const auto& [k, c] : m.abstract) os << "abstract " << k << " " << c->str() << "\n";
    os << "initial " << format_heap(m.initial_concrete, d.concrete_locations) << " "
       << format_heap(m.initial_abstract, d.abstract_locations) << "\n";
    if (m.shared) os << "shared " << m.shared->str() << "\n";
    for (const auto& a : m.guarantee) os << "guarantee " << a.name << " " << a.pre.str() << " ~> " << a.post.str() << "\n";
    for (const auto& a : m.environment) os << "environment " << a.name << " " << a.pre.str() << " ~> " << a.post.str() << "\n";
    for (const auto& [k, s] : m.spec) os << "spec " << k << " " << s.pre.str() << " / " << s.post.str() << "\n";
    return os.str();
}

Assertion parse_assertion(const json& j, const Model& m, const std::string& where) { return assertion_env(j, m, {}, where); }

CommandPtr parse_command(const json& j, const Model& m, bool abstract_side, const std::string& where) {
    return bind_command(command_env(j, m, abstract_side, {}, where), table_of(m, abstract_side), m.domains.values);
}

namespace {

PrimPtr bound_prim(const PrimCommand& p, const Model& m) {
    return bind_command(cmd::prim(p), m.domains.concrete_locations, m.domains.values)->prim;
}

std::optional<Assertion> opt_assertion(const json& j, const char* key, const Model& m, const Env& env,
                                       const std::string& where) {
    if (!j.contains(key)) return std::nullopt;
    return assertion_env(j.at(key), m, env, where + "." + key);
}

OutlinePtr outline_env(const json& j, const Model& m, const Env& env, const std::string& where);

OutlinePtr node_of(OutlineNode n) { return std::make_shared<const OutlineNode>(std::move(n)); }

OutlinePtr outline_env(const json& j, const Model& m, const Env& env, const std::string& where) {
    OutlineNode n;
    if (j.is_object() && j.contains("label")) n.label = text(j.at("label"), where + ".label");
    if (j.is_string() && j.get<std::string>() == "skip") {
        n.kind = OutlineNode::Kind::Skip;
        return node_of(std::move(n));
    }
    if (auto p = parse_prim(j, m, false, env, where)) {
        n.kind = OutlineNode::Kind::Prim;
        n.prim = bound_prim(*p, m);
        return node_of(std::move(n));
    }
    if (!j.is_object()) schema(where, "expected an outline node");
    if (j.contains("seq")) {
        n.kind = OutlineNode::Kind::Seq;
        const auto& a = j.at("seq");
        if (!a.is_array()) schema(where, "seq expects a list");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string w = where + ".seq[" + std::to_string(i) + "]";
            OutlineNode::Item it;
            if (a[i].is_object() && a[i].contains("assert")) {
                it.assertion = assertion_env(a[i].at("assert"), m, env, w + ".assert");
            } else {
                it.node = outline_env(a[i], m, env, w);
            }
            n.items.push_back(std::move(it));
        }
        return node_of(std::move(n));
    }
    if (j.contains("choice")) {
        n.kind = OutlineNode::Kind::Choice;
        const auto& a = j.at("choice");
        for (std::size_t i = 0; i < a.size(); ++i) {
            n.kids.push_back(outline_env(a[i], m, env, where + ".choice[" + std::to_string(i) + "]"));
        }
        if (n.kids.empty()) schema(where, "choice expects a non-empty list");
        return node_of(std::move(n));
    }
    if (j.contains("iter")) {
        n.kind = OutlineNode::Kind::Iter;
        n.kids.push_back(outline_env(j.at("iter"), m, env, where + ".iter"));
        n.invariant = opt_assertion(j, "invariant", m, env, where);
        return node_of(std::move(n));
    }
    auto sub = [&](const char* key) {
        if (!j.contains(key)) {
            OutlineNode s;
            s.kind = OutlineNode::Kind::Skip;
            return node_of(std::move(s));
        }
        return outline_env(j.at(key), m, env, where + "." + key);
    };
    if (j.contains("while")) {
        n.kind = OutlineNode::Kind::While;
        n.cond = expression(j.at("while"), m, false, env, where + ".while");
        bind_locations(n.cond, m.domains.concrete_locations, m.domains.values);
        n.kids.push_back(sub("do"));
        n.invariant = opt_assertion(j, "invariant", m, env, where);
        n.body_pre = opt_assertion(j, "body_pre", m, env, where);
        n.exit = opt_assertion(j, "exit", m, env, where);
        return node_of(std::move(n));
    }
    if (j.contains("if") || j.contains("cas")) {
        n.kind = OutlineNode::Kind::Branch;
        if (j.contains("if")) {
            const Expr c = expression(j.at("if"), m, false, env, where + ".if");
            n.guards = {bound_prim(cmd::assume(c), m), bound_prim(cmd::assume(Expr::negate(c)), m)};
        } else {
            const LocRef l = location(j.at("cas"), m, false, env, where + ".cas");
            const Expr o = expression(field(j, "old", where), m, false, env, where + ".old");
            const Expr w = expression(field(j, "new", where), m, false, env, where + ".new");
            n.guards = {bound_prim(cmd::cas_succ(l, o, w), m), bound_prim(cmd::cas_fail(l, o, w), m)};
        }
        n.kids = {sub("then"), sub("else")};
        n.branch_pre = {opt_assertion(j, "then_pre", m, env, where), opt_assertion(j, "else_pre", m, env, where)};
        return node_of(std::move(n));
    }
    if (j.contains("for")) {
        n.kind = OutlineNode::Kind::Seq;
        const std::string var = text(j.at("for"), where + ".for");
        const auto [lo, hi] = for_range(j, m, where);
        const auto& inv = field(j, "invariant", where);
        for (Value v = lo; v <= hi + 1; ++v) {
            Env inner = env;
            inner[var] = v;
            OutlineNode::Item a;
            a.assertion = assertion_env(inv, m, inner, where + ".invariant");
            n.items.push_back(std::move(a));
            if (v > hi) break;
            OutlineNode::Item c;
            c.node = outline_env(field(j, "do", where), m, inner, where + ".do");
            n.items.push_back(std::move(c));
        }
        return node_of(std::move(n));
    }
    if (j.contains("frame")) {
        n.kind = OutlineNode::Kind::Frame;
        n.frame = assertion_env(j.at("frame"), m, env, where + ".frame");
        n.pre = opt_assertion(j, "pre", m, env, where);
        n.post = opt_assertion(j, "post", m, env, where);
        n.kids.push_back(outline_env(field(j, "body", where), m, env, where + ".body"));
        return node_of(std::move(n));
    }
    if (j.contains("conseq")) {
        n.kind = OutlineNode::Kind::Conseq;
        n.pre = opt_assertion(j, "pre", m, env, where);
        n.post = opt_assertion(j, "post", m, env, where);
        n.kids.push_back(outline_env(j.at("conseq"), m, env, where + ".conseq"));
        return node_of(std::move(n));
    }
    if (j.contains("disj")) {
        n.kind = OutlineNode::Kind::Disj;
        const auto& a = j.at("disj");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string w = where + ".disj[" + std::to_string(i) + "]";
            n.disj_pre.push_back(assertion_env(field(a[i], "pre", w), m, env, w + ".pre"));
            n.disj_post.push_back(assertion_env(field(a[i], "post", w), m, env, w + ".post"));
            n.kids.push_back(outline_env(field(a[i], "body", w), m, env, w + ".body"));
        }
        return node_of(std::move(n));
    }
    if (j.contains("exists")) {
        n.kind = OutlineNode::Kind::Exists;
        n.var = text(j.at("exists"), where + ".exists");
        n.pre = opt_assertion(j, "pre", m, env, where);
        n.post = opt_assertion(j, "post", m, env, where);
        n.kids.push_back(outline_env(field(j, "body", where), m, env, where + ".body"));
        return node_of(std::move(n));
    }
    schema(where, "unknown outline form");
}

} // namespace

OutlineSet load_outline(const json& doc, const Model& m) {
    OutlineSet out;
    const auto& methods = field(doc, "methods", "outline");
    if (!methods.is_object()) schema("outline.methods", "expected an object keyed by method");
    for (const auto& [k, v] : methods.items()) {
        if (!m.methods.count(k)) throw Error(ErrorKind::ModelError, "outline for unknown method " + k);
        out.methods[k] = outline_env(v, m, {}, "outline.methods." + k);
    }
    return out;
}

OutlineSet load_outline_file(const std::string& path, const Model& m) { return load_outline(read_json_file(path), m); }

CommandPtr method_instance(const Model& m, std::size_t k) {
    const auto alpha = m.domains.alphabet();
    const auto& a = alpha.at(k);
    const auto& name = m.domains.methods[static_cast<std::size_t>(a.method)].name;
    return substitute(m.methods.at(name), Interpretation{}.with("a", a.arg).with("r", a.ret));
}

CommandPtr abstract_instance(const Model& m, std::size_t k) {
    const auto alpha = m.domains.alphabet();
    const auto& a = alpha.at(k);
    const auto& name = m.domains.methods[static_cast<std::size_t>(a.method)].name;
    return substitute(m.abstract.at(name), Interpretation{}.with("a", a.arg).with("r", a.ret));
}

Interpretation instance_interpretation(const Model& m, std::size_t k, ThreadId t) {
    const auto alpha = m.domains.alphabet();
    const auto& a = alpha.at(k);
    return Interpretation{}.with("t", t).with("a", a.arg).with("r", a.ret);
}

Session::Session(Model m) : model_(std::move(m)) {
    std::vector<CommandPtr> ops;
    const auto n = model_.domains.alphabet().size();
    for (std::size_t k = 0; k < n; ++k) ops.push_back(abstract_instance(model_, k));
    lp_ = std::make_unique<LpContext>(model_.domains, std::move(ops));
}

Library Session::concrete_library() const {
    Library lib;
    lib.domains = &model_.domains;
    lib.initial = model_.initial_concrete;
    const auto n = model_.domains.alphabet().size();
    for (std::size_t k = 0; k < n; ++k) lib.bodies.push_back(method_instance(model_, k));
    return lib;
}

Library Session::abstract_library() const {
    Library lib;
    lib.domains = &model_.domains;
    lib.initial = model_.initial_abstract;
    const auto n = model_.domains.alphabet().size();
    for (std::size_t k = 0; k < n; ++k) lib.bodies.push_back(cmd::prim(cmd::atomic(abstract_instance(model_, k))));
    return lib;
}

const Monoid& Session::monoid() const {
    std::call_once(once_, [&] {
        const Domains& d = model_.domains;
        if (model_.monoid == "dcsl") {
            universe_ = enumerate_worlds(d);
            monoid_ = std::make_unique<DcslMonoid>(*lp_, universe_);
        } else {
            SharedSpace space;
            space.domains = &d;
            if (model_.shared) {
                SpatialContext ctx{&d, nullptr};
                space.states = generate(*model_.shared, Interpretation{}, ctx, GenerateMode::Exact);
            }
            rg_.resize(static_cast<std::size_t>(d.threads) + 1);
            std::vector<RelationPtr> guar(static_cast<std::size_t>(d.threads) + 1), env(guar.size());
            for (int t = 1; t <= d.threads; ++t) {
                std::vector<RgAction> g = model_.guarantee, e = model_.environment;
                for (auto& a : g) a.fixed = Interpretation{}.with("t", t);
                for (auto& a : e) a.fixed = Interpretation{}.with("t", t);
                guar[static_cast<std::size_t>(t)] = g.empty() ? Relation::empty() : Relation::actions(g, d, nullptr);
                env[static_cast<std::size_t>(t)] = e.empty() ? Relation::empty() : Relation::actions(e, d, nullptr);
            }
            for (int t = 1; t <= d.threads; ++t) {
                RelationPtr rely = Relation::empty();
                for (int u = 1; u <= d.threads; ++u) {
                    if (u == t) continue;
                    rely = Relation::union_of(rely, guar[static_cast<std::size_t>(u)]);
                    rely = Relation::union_of(rely, env[static_cast<std::size_t>(u)]);
                }
                rg_[static_cast<std::size_t>(t)] = {rely, guar[static_cast<std::size_t>(t)]};
            }
            auto rg = rg_;
            monoid_ = std::make_unique<RgsepMonoid>(*lp_, std::move(space),
                                                    [rg](ThreadId t) { return rg.at(static_cast<std::size_t>(t)); });
        }
        eval_ = std::make_unique<Evaluator>(*monoid_);
    });
    return *monoid_;
}

const Evaluator& Session::evaluator() const {
    (void)monoid();
    return *eval_;
}

} // namespace relviews
