"""三元群工作台工具"""
