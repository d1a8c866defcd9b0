"""Оптимизатор квантовых схем на основе ZX-исчисления."""
