"""caseflow: guardrailed intake dialogues, structured note drafting, an
asynchronous review queue with an editable cockpit API, and scenario-driven
auto-evaluation. Nothing in this package gives medical advice; drafted
content is only released after an accountable reviewer signs off."""

__version__ = "0.1.0"
