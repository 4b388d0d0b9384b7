"""公理与定律目录资源"""

import json
from pathlib import Path
from typing import Optional


class AxiomCatalogResource:
    """公理目录提供器：编号 → 等式与说明"""

    def __init__(self):
        """加载公理目录数据"""
        data_path = Path(__file__).parent.parent / "data" / "axioms.json"
        with open(data_path, 'r', encoding='utf-8') as f:
            self.topics = json.load(f)
        self._by_id = {
            rule['id']: (topic, rule)
            for topic, section in self.topics.items()
            for rule in section['rules']
        }

    def ids(self) -> list[str]:
        return list(self._by_id)

    def lookup(self, axiom_id: str) -> Optional[dict]:
        """按编号查找，返回 {'id', 'statement', 'description', 'topic'} 或 None"""
        if axiom_id not in self._by_id:
            return None
        topic, rule = self._by_id[axiom_id]
        return {**rule, 'topic': topic}

    def get_axiom(self, axiom_id: str) -> str:
        """
        获取单个编号的说明

        Args:
            axiom_id: 报告中出现的编号，如 "L1⊢⊣"、"3r2"、"inv.4"

        Returns:
            格式化的说明文档
        """
        entry = self.lookup(axiom_id)
        if entry is None:
            return f"未知的编号: {axiom_id}\n\n可用编号: {', '.join(self.ids())}"
        doc = f"# {entry['id']}\n\n"
        doc += f"`{entry['statement']}`\n\n"
        doc += f"{entry['description']}\n\n"
        doc += f"**所属:** {self.topics[entry['topic']]['title']}\n"
        return doc

    def get_topic(self, topic: str) -> str:
        """获取一个主题下的全部编号"""
        if topic not in self.topics:
            available = ', '.join(self.topics.keys())
            return f"未知的主题: {topic}\n\n可用主题: {available}"
        section = self.topics[topic]
        doc = f"# {section['title']}\n\n"
        doc += "| 编号 | 等式 | 说明 |\n|------|------|------|\n"
        for rule in section['rules']:
            doc += f"| {rule['id']} | `{rule['statement']}` | {rule['description']} |\n"
        return doc

    def get_all_axioms(self) -> str:
        """全部主题的目录"""
        doc = "# 公理与定律目录\n\n"
        for topic, section in self.topics.items():
            doc += f"- **{topic}**: {section['title']}（{len(section['rules'])} 条）\n"
        doc += "\n使用 `trioid://axioms/{id}` 查看单个编号。\n"
        return doc


# 全局实例
_resource = None


def get_resource() -> AxiomCatalogResource:
    """获取公理目录资源实例（单例）"""
    global _resource
    if _resource is None:
        _resource = AxiomCatalogResource()
    return _resource
