#include "sac/wellformed.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace sac {

bool is_legal_support(ElementKind from, ElementKind to)
{
    switch (from) {
    case ElementKind::Goal:
        return to == ElementKind::Goal || to == ElementKind::Strategy || to == ElementKind::Solution;
    case ElementKind::Strategy:
        return to == ElementKind::Goal || to == ElementKind::Solution;
    default:
        return false;
    }
}

namespace {

class WellformedChecker
{
public:
    explicit WellformedChecker(const GsnModel& model) : model_(model)
    {
        for (const auto& module : model.modules) {
            for (const auto& e : module.elements) {
                auto [it, inserted] = by_id_.emplace(e.id, &e);
                if (!inserted) {
                    duplicates_.push_back(&e);
                }
                for (const auto& acp : e.acps) {
                    acp_goals_.emplace(acp.confidence_goal, true);
                }
            }
        }
    }

    std::vector<Finding> run()
    {
        check_cycles();
        check_duplicates();
        check_references();
        check_edges();
        check_module_roots();
        check_undeveloped();
        sort_findings(findings_);
        return std::move(findings_);
    }

private:
    const GsnElement* find(const std::string& id) const
    {
        const auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : it->second;
    }

    void add(std::string_view rule, std::string message, std::vector<std::string> elements)
    {
        Finding f;
        f.rule = std::string(rule);
        f.severity = find_rule(rule)->default_severity;
        f.message = std::move(message);
        if (!elements.empty()) {
            if (const GsnElement* e = find(elements.front())) {
                f.location = e->location;
            }
        }
        f.elements = std::move(elements);
        findings_.push_back(std::move(f));
    }

    // WF1: colour-marking DFS over resolvable supported_by edges.
    void check_cycles()
    {
        enum class Mark : std::uint8_t { White, Grey, Black };
        std::unordered_map<const GsnElement*, Mark> mark;
        std::map<std::vector<std::string>, bool> reported;
        std::vector<const GsnElement*> starts;
        for (const auto& module : model_.modules) {
            for (const auto& e : module.elements) {
                starts.push_back(find(e.id));
            }
        }
        for (const GsnElement* start : starts) {
            if (mark[start] != Mark::White) {
                continue;
            }
            struct Frame
            {
                const GsnElement* node;
                std::size_t next;
            };
            std::vector<Frame> stack{{start, 0}};
            mark[start] = Mark::Grey;
            while (!stack.empty()) {
                Frame& f = stack.back();
                if (f.next == f.node->supported_by.size()) {
                    mark[f.node] = Mark::Black;
                    stack.pop_back();
                    continue;
                }
                const GsnElement* child = find(f.node->supported_by[f.next++]);
                if (child == nullptr) {
                    continue;
                }
                if (mark[child] == Mark::Grey) {
                    std::vector<std::string> ids;
                    auto it = std::find_if(stack.begin(), stack.end(),
                                           [&](const Frame& g) { return g.node == child; });
                    for (; it != stack.end(); ++it) {
                        ids.push_back(it->node->id);
                    }
                    std::sort(ids.begin(), ids.end());
                    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
                    if (!reported[ids]) {
                        reported[ids] = true;
                        std::string joined;
                        for (const auto& s : ids) {
                            joined += (joined.empty() ? "" : ", ") + s;
                        }
                        add("WF1", "cyclic supported_by relation among: " + joined, ids);
                    }
                } else if (mark[child] == Mark::White) {
                    mark[child] = Mark::Grey;
                    stack.push_back({child, 0});
                }
            }
        }
    }

    void check_duplicates()
    {
        for (const GsnElement* e : duplicates_) {
            add("WF2", "element id '" + e->id + "' is declared more than once", {e->id});
        }
    }

    void check_references()
    {
        for (const auto& module : model_.modules) {
            for (const auto& e : module.elements) {
                auto check = [&](const std::string& ref, std::string_view what) {
                    if (find(ref) == nullptr) {
                        add("WF3", "'" + e.id + "' " + std::string(what) + " unknown element '" + ref + "'",
                            {e.id, ref});
                    }
                };
                for (const auto& ref : e.supported_by) {
                    check(ref, "is supported by");
                }
                for (const auto& ref : e.in_context_of) {
                    check(ref, "is in the context of");
                }
                for (const auto& acp : e.acps) {
                    check(acp.confidence_goal, "links through an assurance claim point to");
                }
            }
        }
    }

    // WF4, WF5, WF6
    void check_edges()
    {
        for (const auto& module : model_.modules) {
            for (const auto& e : module.elements) {
                for (const auto& ref : e.supported_by) {
                    const GsnElement* target = find(ref);
                    if (target == nullptr) {
                        continue;
                    }
                    if (!is_legal_support(e.kind, target->kind)) {
                        add("WF4",
                            "a " + std::string(to_string(e.kind)) + " cannot be supported by a " +
                                std::string(to_string(target->kind)) + " ('" + e.id + "' -> '" + ref + "')",
                            {e.id, ref});
                    }
                    if (is_contextual(target->kind)) {
                        add("WF6",
                            std::string(to_string(target->kind)) + " '" + ref +
                                "' must be attached via in_context_of, not supported_by",
                            {e.id, ref});
                    }
                }
                for (const auto& ref : e.in_context_of) {
                    const GsnElement* target = find(ref);
                    if (target != nullptr && !is_contextual(target->kind)) {
                        add("WF6",
                            "in_context_of must target a context, assumption or justification; '" + ref +
                                "' is a " + std::string(to_string(target->kind)),
                            {e.id, ref});
                    }
                }
                if (e.kind == ElementKind::Solution && (!e.supported_by.empty() || !e.in_context_of.empty())) {
                    add("WF5", "solution '" + e.id + "' must be a leaf", {e.id});
                }
                if (is_contextual(e.kind) && !e.in_context_of.empty()) {
                    add("WF6",
                        std::string(to_string(e.kind)) + " '" + e.id + "' cannot have in_context_of relations",
                        {e.id});
                }
            }
        }
    }

    // WF7: elements not supported from within their own module. Contextual
    // elements and goals anchored by an assurance claim point do not count.
    void check_module_roots()
    {
        for (const auto& module : model_.modules) {
            std::unordered_map<std::string, bool> referenced;
            for (const auto& e : module.elements) {
                for (const auto& ref : e.supported_by) {
                    referenced[ref] = true;
                }
            }
            std::vector<std::string> roots;
            for (const auto& e : module.elements) {
                if (is_contextual(e.kind) || referenced.contains(e.id) || acp_goals_.contains(e.id)) {
                    continue;
                }
                roots.push_back(e.id);
            }
            if (roots.size() > 1) {
                std::sort(roots.begin(), roots.end());
                std::string joined;
                for (const auto& s : roots) {
                    joined += (joined.empty() ? "" : ", ") + s;
                }
                add("WF7", "module '" + module.id + "' has " + std::to_string(roots.size()) + " roots: " + joined,
                    roots);
            }
        }
    }

    void check_undeveloped()
    {
        for (const auto& module : model_.modules) {
            for (const auto& e : module.elements) {
                if (e.undeveloped && !e.supported_by.empty()) {
                    add("WF8", "'" + e.id + "' is marked undeveloped but has supporting elements", {e.id});
                }
            }
        }
    }

    const GsnModel& model_;
    std::unordered_map<std::string, const GsnElement*> by_id_;
    std::unordered_map<std::string, bool> acp_goals_;
    std::vector<const GsnElement*> duplicates_;
    std::vector<Finding> findings_;
};

}  // namespace

std::vector<Finding> check_wellformed(const GsnModel& model)
{
    return WellformedChecker(model).run();
}

std::vector<Finding> check_wellformed(const LinkedModel& model)
{
    return check_wellformed(model.model());
}

}  // namespace sac
