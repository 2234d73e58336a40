import sys


def main():
    # 延迟导入命令行模块，减少启动时间
    from src.cli import main as cli_main
    return cli_main()


if __name__ == '__main__':
    sys.exit(main())
