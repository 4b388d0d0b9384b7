"""载体、运算表、交换格式与同态工具"""
