"""hopfcone: exact computer algebra for combinatorial Hopf algebras,
polyhedral-cone characters, rational moulds, Rota-Baxter machinery and the
Catalan family of Lie idempotents."""

__version__ = "0.1.0"
